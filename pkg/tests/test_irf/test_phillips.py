"""Unit tests for irf/phillips.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from tests.globals import SEED

from pwasvar import DriverDegenerate, ModelValidationError, ZeroDenominator
from pwasvar.generators import PhillipsSvarGenerator
from pwasvar.irf import cumulative_multiplier, kinked_slope, phillips_partial_residuals
from pwasvar.model import PwaSvarModel, simulate
from pwasvar.pwa import PwaMap


def threshold_model(base: np.ndarray, step: np.ndarray) -> PwaSvarModel:
    p = base.shape[0]
    a = np.eye(p)[0]
    f0 = PwaMap.from_threshold_steps(a, [0.0], np.zeros(p), base, [step])
    lag = PwaMap.from_threshold_steps(a, [0.0], np.zeros(p), 0.5 * np.eye(p), [np.zeros(p)])
    return PwaSvarModel(f0, [lag], np.zeros(p))


class TestCumulativeMultiplier:
    """Tests for cumulative_multiplier."""

    def test_value(self):
        """Ratio of cumulative sums."""
        assert cumulative_multiplier(np.array([1.0, 0.5]), np.array([2.0, 2.0]), 1) == pytest.approx(0.375)
        assert cumulative_multiplier(np.array([1.0, 0.5]), np.array([2.0, 2.0]), 0) == pytest.approx(0.5)

    def test_degenerate_driver(self):
        """A cumulative driver response that sums to zero is rejected."""
        with pytest.raises(DriverDegenerate):
            cumulative_multiplier(np.array([1.0, 1.0]), np.array([1.0, -1.0]), 1)

    def test_horizon_out_of_range(self):
        """h must index both responses."""
        with pytest.raises(ValueError):
            cumulative_multiplier(np.ones(3), np.ones(2), 2)


class TestKinkedSlope:
    """Tests for kinked_slope."""

    def test_calibrated_slopes(self):
        """The regime slopes are the calibrated Phillips-curve slopes."""
        model = PhillipsSvarGenerator.model(kappa_slack=0.3, kappa_tight=1.7)
        assert kinked_slope(model, 1) == pytest.approx(0.3)
        assert kinked_slope(model, 2) == pytest.approx(1.7)

    def test_invalid_regime(self):
        """Regimes are numbered from one."""
        with pytest.raises(ValueError):
            kinked_slope(PhillipsSvarGenerator.model(), 3)

    def test_needs_bivariate_model(self):
        """Only p = 2 models have a Phillips curve."""
        model = threshold_model(np.eye(3), np.array([0.5, 0.0, 0.0]))
        with pytest.raises(ModelValidationError):
            kinked_slope(model, 1)

    def test_zero_denominator(self):
        """A zero inflation coefficient in the Phillips equation has no slope."""
        model = threshold_model(np.array([[1.0, 1.0], [1.0, 0.0]]), np.array([1.0, 0.5]))
        with pytest.raises(ZeroDenominator):
            kinked_slope(model, 1)


class TestPhillipsPartialResiduals:
    """Tests for phillips_partial_residuals."""

    def test_residual_is_structural_shock(self):
        """At the true model the distance from the kinked curve is the Phillips-curve shock."""
        model = PhillipsSvarGenerator.model()
        result = simulate(model, np.zeros((2, 2)), 200, seed=SEED)
        partial = phillips_partial_residuals(model, result.path)
        frame = partial.frame
        assert list(frame.columns) == ["t", "log_theta", "adjusted_inflation", "regime", "fitted"]
        assert len(frame) == 198
        assert frame["t"].iloc[0] == 3
        np.testing.assert_allclose(frame["adjusted_inflation"] - frame["fitted"], result.shocks[2:, 1], atol=1e-10)
        np.testing.assert_array_equal(frame["regime"], result.regimes[2:])
        assert partial.slopes == pytest.approx((0.5, 2.0))

    def test_zero_denominator(self):
        """Data cannot be adjusted when the Phillips equation has no inflation coefficient."""
        model = threshold_model(np.array([[1.0, 1.0], [1.0, 0.0]]), np.array([1.0, 0.5]))
        with pytest.raises(ZeroDenominator):
            phillips_partial_residuals(model, np.ones((5, 2)))
