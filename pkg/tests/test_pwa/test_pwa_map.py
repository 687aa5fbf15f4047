"""Unit tests for pwa/pwa_map.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from tests.globals import SEED

from pwasvar import ContinuityViolation, ModelValidationError, PwaMap, ThresholdPartition
from pwasvar.pwa import evaluate, jacobian_at, regime_of, validate_continuity


def abs_map() -> PwaMap:
    return PwaMap.threshold([1.0], [0.0], [[0.0], [0.0]], [[[-1.0]], [[1.0]]])


class TestPwaMap:
    """Tests for PwaMap."""

    def test_absolute_value(self):
        """The kinked map |z| evaluates on both sides."""
        f = abs_map()
        np.testing.assert_allclose(f.evaluate(np.array([-2.0])), [2.0])
        np.testing.assert_allclose(f.evaluate(np.array([[3.0], [-0.5]])), [[3.0], [0.5]])

    def test_module_functions_match_methods(self):
        """regime_of, evaluate and jacobian_at mirror the methods."""
        f = abs_map()
        z = np.array([-1.5])
        assert regime_of(f, z) == f.regime_of(z) == 1
        np.testing.assert_array_equal(evaluate(f, z), f.evaluate(z))
        np.testing.assert_array_equal(jacobian_at(f, z), [[-1.0]])

    def test_from_threshold_steps_is_continuous(self):
        """Maps built from rank-one steps agree on both sides of every threshold."""
        rng = np.random.default_rng(SEED)
        f = PwaMap.from_threshold_steps([1.0, 2.0], [-0.5, 1.0], rng.standard_normal(2), np.eye(2), rng.standard_normal((2, 2)))
        assert f.validate_continuity().passed
        a = f.partition.direction
        for tau in f.partition.thresholds:
            z = a * tau / (a @ a) + np.array([2.0, -1.0])
            lower = f.intercepts + np.einsum("lij,j->li", f.matrices, z)
            labels = [f.regime_of(z - 1e-7 * a), f.regime_of(z + 1e-7 * a)]
            np.testing.assert_allclose(lower[labels[0] - 1], lower[labels[1] - 1], atol=1e-10)

    def test_matrix_discontinuity_raises(self):
        """A jump outside the threshold direction violates continuity."""
        mats = [np.eye(2), [[1.0, 1.0], [0.0, 1.0]]]
        with pytest.raises(ContinuityViolation) as exc:
            PwaMap.threshold([1.0, 0.0], [0.0], np.zeros((2, 2)), mats)
        assert exc.value.regime_pair == (1, 2)

    def test_intercept_discontinuity_is_reported(self):
        """With validate=False the report lists the failed intercept condition."""
        f = PwaMap(ThresholdPartition([1.0, 0.0], [0.0]), [[0.0, 0.0], [1.0, 0.0]], [np.eye(2), np.eye(2)], validate=False)
        report = validate_continuity(f)
        assert not report.passed
        assert report.violations[0][1] == "intercept"
        assert report.max_residual == pytest.approx(1.0)

    def test_shape_mismatch(self):
        """Matrices of the wrong shape are rejected."""
        with pytest.raises(ModelValidationError):
            PwaMap(ThresholdPartition([1.0, 0.0], [0.0]), np.zeros((2, 2)), np.zeros((2, 3, 3)))

    def test_conic_intercepts_must_vanish(self):
        """Piecewise-linear maps carry no intercept."""
        from pwasvar import ConicPartition

        with pytest.raises(ModelValidationError):
            PwaMap(ConicPartition(np.eye(1)), [[1.0], [1.0]], [[[1.0]], [[1.0]]])

    def test_split_form(self):
        """Each coordinate uses its own slope on each side."""
        f = PwaMap.from_split_form(np.eye(2), np.eye(2), 2.0 * np.eye(2))
        np.testing.assert_allclose(f.evaluate(np.array([-1.0, 1.0])), [-2.0, 1.0])
        np.testing.assert_allclose(f.psi_plus, np.eye(2))
        np.testing.assert_allclose(f.psi_minus, 2.0 * np.eye(2))
        assert f.validate_continuity().passed

    def test_linear(self):
        """A single-regime affine map."""
        f = PwaMap.linear([[2.0, 0.0], [1.0, 1.0]], [1.0, -1.0])
        assert f.n_regimes == 1
        np.testing.assert_allclose(f.evaluate(np.array([1.0, 1.0])), [3.0, 1.0])

    def test_rotated(self):
        """rotated(Q) evaluates to Q f(z)."""
        f = abs_map()
        g = f.rotated(np.array([[-1.0]]))
        np.testing.assert_allclose(g.evaluate(np.array([3.0])), [-3.0])

    def test_equality(self):
        """Maps with equal partitions and arrays are equal."""
        assert abs_map() == abs_map()
        assert abs_map() != abs_map().scaled(2.0)

    def test_arrays_are_read_only(self):
        """Regime arrays cannot be modified in place."""
        f = abs_map()
        with pytest.raises(ValueError):
            f.matrices[0, 0, 0] = 5.0
