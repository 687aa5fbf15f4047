"""Class defining a random continuous piecewise-affine map generator."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np

from pwasvar.pwa import PwaMap
from pwasvar.random import substream


class PwaMapGenerator:
    """A class to generate random continuous threshold-affine and conic piecewise-linear maps."""

    @staticmethod
    def generate_threshold(seed: int = 42, p: int = 2, n_regimes: int = 2, step_scale: float = 1.0) -> PwaMap:
        """
        Generate a continuous threshold-affine map.

        Parameters
        ----------
        seed : int, optional, default=42
            Seed for the random number generator.
        p : int, optional, default=2
            Dimension.
        n_regimes : int, optional, default=2
            Number of bands.
        step_scale : float, optional, default=1.0
            Standard deviation of the rank-one steps between adjacent regimes; larger values make
            determinant sign changes (non-invertible maps) more frequent.

        Returns
        -------
        PwaMap
            A continuous map, invertible or not.

        Raises
        ------
        ValueError
            If `p` or `n_regimes` is not a positive integer.
        """
        if not isinstance(p, int) or p <= 0:
            raise ValueError(f"p must be a positive integer. Got {p}")
        if not isinstance(n_regimes, int) or n_regimes <= 0:
            raise ValueError(f"n_regimes must be a positive integer. Got {n_regimes}")

        rng = substream(seed)
        direction = rng.standard_normal(p)
        direction /= np.linalg.norm(direction)
        thresholds = np.sort(rng.uniform(-1.0, 1.0, n_regimes - 1)) if n_regimes > 1 else np.array([])
        base = np.eye(p) + 0.5 * rng.standard_normal((p, p))
        steps = step_scale * rng.standard_normal((n_regimes - 1, p))
        return PwaMap.from_threshold_steps(direction, thresholds, rng.standard_normal(p), base, steps)

    @staticmethod
    def generate_conic(seed: int = 42, p: int = 2, spread: float = 0.5) -> PwaMap:
        """
        Generate a conic piecewise-linear map in split form with a random orthant basis.

        Parameters
        ----------
        seed : int, optional, default=42
            Seed for the random number generator.
        p : int, optional, default=2
            Dimension.
        spread : float, optional, default=0.5
            Scale of the difference between the ``psi^+`` and ``psi^-`` columns.

        Returns
        -------
        PwaMap
            A continuous conic map, invertible or not.
        """
        if not isinstance(p, int) or p <= 0:
            raise ValueError(f"p must be a positive integer. Got {p}")

        rng = substream(seed)
        basis = np.eye(p) + 0.3 * rng.standard_normal((p, p))
        psi_plus = np.eye(p) + 0.5 * rng.standard_normal((p, p))
        psi_minus = psi_plus + spread * rng.standard_normal((p, p))
        return PwaMap.from_split_form(basis, psi_plus, psi_minus)
