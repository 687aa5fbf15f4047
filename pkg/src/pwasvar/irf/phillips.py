"""Phillips-curve summaries of a bivariate (labour-market tightness, inflation) threshold SVAR.

The first variable is the regime-determining tightness measure and the second is inflation; the
second structural equation is the Phillips curve.
"""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np
import pandas as pd

from pwasvar.exceptions import DriverDegenerate, ModelValidationError, ZeroDenominator
from pwasvar.model import PwaSvarModel, lag_histories

DRIVER_TOL = 1e-10

# Tightness levels of the slack-market and tight-market histories in the quarterly application.
SLACK_ANCHOR = -1.84
TIGHT_ANCHOR = 0.68


def cumulative_multiplier(target: np.ndarray, driver: np.ndarray, h: int) -> float:
    """``sum_(s<=h) target[s] / sum_(s<=h) driver[s]``.

    Raises
    ------
    DriverDegenerate
        If the cumulative driver response is below 1e-10 in magnitude.

    Examples
    --------
    >>> cumulative_multiplier(np.array([1.0, 0.5]), np.array([2.0, 2.0]), 1)
    0.375
    """
    target = np.asarray(target, dtype=float)
    driver = np.asarray(driver, dtype=float)
    if not 0 <= h < min(target.size, driver.size):
        raise ValueError(f"h must be in 0..{min(target.size, driver.size) - 1}. Got {h}")
    denom = float(np.sum(driver[: h + 1]))
    if abs(denom) < DRIVER_TOL:
        raise DriverDegenerate(f"Cumulative driver response {denom:.3e} at h={h} is degenerate")
    return float(np.sum(target[: h + 1]) / denom)


def _check_bivariate(model: PwaSvarModel):
    if model.p != 2:
        raise ModelValidationError(f"Phillips-curve summaries need p = 2. Got p = {model.p}")


def kinked_slope(model: PwaSvarModel, regime: int) -> float:
    """Slope ``-Phi0_21 / Phi0_22`` of the Phillips curve in `regime`.

    Raises
    ------
    ZeroDenominator
        If ``Phi0_22`` is zero.
    """
    _check_bivariate(model)
    if not 1 <= regime <= model.n_regimes:
        raise ValueError(f"regime must be in 1..{model.n_regimes}. Got {regime}")
    phi0 = model.f0.matrices[regime - 1]
    if abs(phi0[1, 1]) < 1e-12:
        raise ZeroDenominator(f"Phi0_22 is zero in regime {regime}")
    return float(-phi0[1, 0] / phi0[1, 1])


@dataclass(frozen=True)
class PartialResiduals:
    """Tightness against inflation net of every right-hand-side contribution but tightness.

    Attributes
    ----------
    frame : pd.DataFrame
        Columns t, log_theta, adjusted_inflation, regime, fitted.
    slopes : tuple[float, ...]
        :func:`kinked_slope` of every regime.
    """

    frame: pd.DataFrame
    slopes: tuple


def phillips_partial_residuals(model: PwaSvarModel, data: np.ndarray) -> PartialResiduals:
    """Partial-residual scatter of the Phillips equation.

    Solving the second structural equation for inflation and removing the lag, intercept and
    shock-independent terms leaves the kinked curve plus the scaled structural shock:
    ``adjusted = pi_t - rhs_2 / Phi0_22 = kappa^(l) log_theta_t - phi_2^(l) / Phi0_22 + sigma eps / Phi0_22``.
    """
    _check_bivariate(model)
    data = np.asarray(data, dtype=float)
    k = model.k
    hist = lag_histories(data, k)
    z = data[k:]
    labels = np.atleast_1d(model.f0.regime_of(z))
    rhs = model.rhs_mean(hist)
    phi22 = model.f0.matrices[labels - 1, 1, 1]
    if np.any(np.abs(phi22) < 1e-12):
        raise ZeroDenominator("Phi0_22 is zero in some regime")
    slopes = tuple(kinked_slope(model, ell) for ell in range(1, model.n_regimes + 1))
    adjusted = z[:, 1] - rhs[:, 1] / phi22
    fitted = np.array(slopes)[labels - 1] * z[:, 0] - model.f0.intercepts[labels - 1, 1] / phi22
    frame = pd.DataFrame(
        {
            "t": np.arange(k + 1, data.shape[0] + 1),
            "log_theta": z[:, 0],
            "adjusted_inflation": adjusted,
            "regime": labels,
            "fitted": fitted,
        }
    )
    return PartialResiduals(frame=frame, slopes=slopes)
