"""Isotropic Gaussian smoothing kernel."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GaussianKernelSpec:
    """Mean-zero isotropic Gaussian kernel with standard deviation `bandwidth` per coordinate.

    Parameters
    ----------
    bandwidth : float
        Kernel standard deviation ``h > 0``, in units of z.

    Raises
    ------
    ValueError
        If `bandwidth` is not a positive finite number.
    """

    bandwidth: float

    def __post_init__(self):
        h = self.bandwidth
        if isinstance(h, bool) or not isinstance(h, (int, float, np.floating)) or not np.isfinite(h) or h <= 0:
            raise ValueError(f"bandwidth must be a positive finite number. Got {h}")
        object.__setattr__(self, "bandwidth", float(h))

    def sigma_along(self, direction: np.ndarray) -> float:
        """Standard deviation of ``a'u`` for ``u`` drawn from the kernel."""
        return self.bandwidth * float(np.linalg.norm(direction))

    def density(self, u: np.ndarray) -> np.ndarray | float:
        """Kernel density at `u` (shape (p,) or (n, p))."""
        u = np.asarray(u, dtype=float)
        p = u.shape[-1]
        q = np.sum(u * u, axis=-1) / self.bandwidth**2
        return np.exp(-0.5 * q) / ((2.0 * np.pi) ** (p / 2) * self.bandwidth**p)
