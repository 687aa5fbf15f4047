"""Class defining a two-regime bivariate Phillips-curve SVAR generator."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np

from pwasvar.model import PwaSvarModel, simulate
from pwasvar.pwa import PwaMap

# Regime-1 structural matrices (tightness first, inflation second) and the tight-regime tightness columns.
IMPACT_SLACK = np.array([[2.0, 0.0], [-0.5, 1.0]])
LAG1_SLACK = np.array([[1.2, 0.0], [-0.2, 0.4]])
LAG2_SLACK = np.array([[0.2, 0.0], [-0.05, 0.2]])
IMPACT_TIGHT_COL = np.array([2.5, -2.0])
LAG1_TIGHT_COL = np.array([1.5, -1.1])
LAG2_TIGHT_COL = np.array([0.25, -0.2])
INTERCEPT = np.array([0.0, 0.5])


class PhillipsSvarGenerator:
    """A class to generate two-regime (slack, tight) labour-market Phillips-curve SVARs and their data.

    Variables are ordered (log tightness, inflation); the regime is set by the sign of log tightness
    relative to `threshold`, and the Phillips-curve slope is ``kappa_slack`` below and ``kappa_tight``
    above it.
    """

    @staticmethod
    def model(kappa_slack: float = 0.5, kappa_tight: float = 2.0, threshold: float = 0.0, switching: bool = True) -> PwaSvarModel:
        """
        Build the calibrated model.

        Parameters
        ----------
        kappa_slack, kappa_tight : float, optional, defaults=0.5 and 2.0
            Phillips-curve slopes of the slack and tight regimes.
        threshold : float, optional, default=0.0
            Threshold on log tightness.
        switching : bool, optional, default=True
            When False, both regimes use the slack-regime matrices (a linear SVAR) and `kappa_tight` is ignored.

        Returns
        -------
        PwaSvarModel
            The certified model.
        """
        if switching:
            impact_col = np.array([IMPACT_TIGHT_COL[0], -kappa_tight])
            lag_cols = (LAG1_TIGHT_COL, LAG2_TIGHT_COL)
        else:
            impact_col = np.array([IMPACT_SLACK[0, 0], -kappa_slack])
            lag_cols = (LAG1_SLACK[:, 0], LAG2_SLACK[:, 0])

        a = np.array([1.0, 0.0])
        impact_slack = IMPACT_SLACK.copy()
        impact_slack[1, 0] = -kappa_slack

        def build(base: np.ndarray, tight_col: np.ndarray) -> PwaMap:
            return PwaMap.from_threshold_steps(a, [threshold], np.zeros(2), base, [tight_col - base[:, 0]])

        f0 = build(impact_slack, impact_col)
        lags = [build(LAG1_SLACK, lag_cols[0]), build(LAG2_SLACK, lag_cols[1])]
        return PwaSvarModel(f0, lags, INTERCEPT)

    @staticmethod
    def generate(
        seed: int = 42,
        T: int = 500,
        kappa_slack: float = 0.5,
        kappa_tight: float = 2.0,
        switching: bool = True,
        burn_in: int = 100,
        replicate: int = 0,
    ) -> tuple[PwaSvarModel, np.ndarray]:
        """
        Generate the calibrated model and a simulated sample from it.

        Parameters
        ----------
        seed : int, optional, default=42
            Seed for the shock draws.
        T : int, optional, default=500
            Number of observations returned.
        kappa_slack, kappa_tight : float, optional
            Phillips-curve slopes; the default ratio is 4.
        switching : bool, optional, default=True
            Whether the regimes differ (False gives the linear SVAR).
        burn_in : int, optional, default=100
            Periods simulated from a zero history and discarded.
        replicate : int, optional, default=0
            Substream index of the draws.

        Returns
        -------
        tuple[PwaSvarModel, np.ndarray]
            The model and data of shape (T, 2).

        Raises
        ------
        ValueError
            If `T` is not a positive integer or `burn_in` is negative.
        """
        if not isinstance(T, int) or T <= 0:
            raise ValueError(f"T must be a positive integer. Got {T}")
        if not isinstance(burn_in, int) or burn_in < 0:
            raise ValueError(f"burn_in must be a non-negative integer. Got {burn_in}")

        model = PhillipsSvarGenerator.model(kappa_slack, kappa_tight, switching=switching)
        result = simulate(model, np.zeros((model.k, model.p)), T + burn_in, seed=seed, replicate=replicate)
        return model, result.path[burn_in:]
