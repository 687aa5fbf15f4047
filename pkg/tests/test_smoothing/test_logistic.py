"""Unit tests for smoothing/logistic.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from pwasvar.smoothing import (
    GaussianKernelSpec,
    check_scalar_monotone,
    logistic_transition,
    scan_transition_counterexample,
    smooth_threshold_affine,
    transition_panel,
)


class TestLogisticTransition:
    """Tests for logistic_transition."""

    def test_equal_slopes_is_linear(self):
        """Equal slopes give a straight line."""
        st = logistic_transition(0.7, 0.7, 0.3)
        z = np.linspace(-4.0, 4.0, 9)
        np.testing.assert_allclose(st.evaluate(z), 0.7 * z)

    def test_zero_maps_to_zero(self):
        """The transition passes through the origin."""
        assert logistic_transition(3.0, -1.0, 0.2).evaluate(0.0) == 0.0

    def test_small_scale_limit(self):
        """As the scale shrinks the map tends to the kink."""
        st = logistic_transition(1.0, 0.25, 1e-4)
        assert st.evaluate(1.0) == pytest.approx(0.25, abs=1e-6)
        assert st.evaluate(-1.0) == pytest.approx(-1.0, abs=1e-6)
        np.testing.assert_allclose(st.kink().evaluate(np.array([[1.0], [-1.0]]))[:, 0], [0.25, -1.0])

    def test_derivative_matches_finite_differences(self):
        """The analytic derivative agrees with central differences."""
        st = logistic_transition(1.0, 0.05, 0.5)
        z = np.linspace(-2.0, 2.0, 11)
        eps = 1e-6
        np.testing.assert_allclose(st.derivative(z), (st.evaluate(z + eps) - st.evaluate(z - eps)) / (2 * eps), atol=1e-7)

    @pytest.mark.parametrize("s", [0.0, -1.0])
    def test_invalid_scale(self, s):
        """Non-positive scales are rejected."""
        with pytest.raises(ValueError):
            logistic_transition(1.0, 2.0, s)


class TestCheckScalarMonotone:
    """Tests for check_scalar_monotone."""

    def test_identity(self):
        """The identity is increasing."""
        report = check_scalar_monotone(lambda z: z, -1.0, 1.0, 200)
        assert report.monotone
        assert report.direction == 1
        assert report.violation_point is None

    def test_decreasing(self):
        """A decreasing map is monotone with direction -1."""
        report = check_scalar_monotone(lambda z: -3.0 * z, -1.0, 1.0, 200)
        assert report.monotone
        assert report.direction == -1

    def test_parabola(self):
        """A parabola breaks monotonicity at its vertex."""
        report = check_scalar_monotone(lambda z: z**2, -1.0, 1.0, 201)
        assert not report.monotone
        assert report.violation_point == pytest.approx(0.0, abs=0.02)

    def test_positive_kink(self):
        """A kink with two positive slopes is monotone."""
        kink = logistic_transition(2.0, 0.1, 1.0).kink()
        assert check_scalar_monotone(lambda z: kink.evaluate(z[:, None])[:, 0], -2.0, 2.0, 400).monotone

    def test_small_grid_rejected(self):
        """Grids with fewer than 100 points are rejected."""
        with pytest.raises(ValueError):
            check_scalar_monotone(lambda z: z, -1.0, 1.0, 50)

    def test_empty_interval_rejected(self):
        """The grid end points must be ordered."""
        with pytest.raises(ValueError):
            check_scalar_monotone(lambda z: z, 1.0, 1.0, 200)


class TestTransitionCounterexample:
    """Tests for the logistic non-invertibility counterexample."""

    def test_logistic_folds_while_gaussian_smoothing_does_not(self):
        """Steeply different positive slopes fold the logistic map but not its Gaussian smoothing."""
        st = logistic_transition(1.0, 0.05, 0.5)
        assert not check_scalar_monotone(st.evaluate, -5.0, 5.0, 2001).monotone

        smoothed = smooth_threshold_affine(st.kink(), GaussianKernelSpec(0.5))
        assert check_scalar_monotone(lambda z: smoothed.evaluate(z[:, None])[:, 0], -5.0, 5.0, 2001).monotone

    def test_scan_finds_counterexample(self):
        """The default grid scan locates a violating triple with positive slopes."""
        found = scan_transition_counterexample()
        assert found is not None
        assert found.a1 > 0 and found.a2 > 0
        assert found.gaussian_monotone
        st = logistic_transition(found.a1, found.a2, found.s)
        assert not check_scalar_monotone(st.evaluate, -10.0 * found.s, 10.0 * found.s, 2001).monotone

    def test_scan_without_hit(self):
        """Nearly equal slopes never fold."""
        assert scan_transition_counterexample(a1_grid=[1.0], a2_grid=[1.1], s_grid=[0.5]) is None

    def test_panel(self):
        """The panel tabulates the kink, the logistic map and the smoothed kink."""
        panel = transition_panel(1.0, 0.05, 0.5, n=101)
        assert list(panel.columns) == ["z", "base", "logistic", "gaussian_smoothed"]
        assert len(panel) == 101
        np.testing.assert_allclose(panel["base"], np.where(panel["z"] <= 0, panel["z"], 0.05 * panel["z"]))
