"""Logistic smooth-transition maps, a monotonicity scan, and the search for a transition that breaks invertibility."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd
from scipy.special import expit

from pwasvar.pwa import PwaMap
from pwasvar.smoothing.gaussian_kernel import GaussianKernelSpec
from pwasvar.smoothing.smoothed_threshold import smooth_threshold_affine


@dataclass(frozen=True)
class LogisticTransitionMap:
    """Scalar smooth transition ``f(z) = F(z) a1 z + (1 - F(z)) a2 z`` with ``F(z) = 1 / (1 + exp(z / s))``.

    `F` tends to one as ``z -> -inf``, so `a1` is the slope below zero and `a2` the slope above, and the
    map tends to the kink ``a1 z 1{z <= 0} + a2 z 1{z > 0}`` as ``s -> 0``.
    """

    a1: float
    a2: float
    s: float

    def __post_init__(self):
        if not np.isfinite(self.s) or self.s <= 0:
            raise ValueError(f"transition scale s must be positive. Got {self.s}")

    def weight(self, z: np.ndarray | float) -> np.ndarray | float:
        """Transition weight ``F(z)`` on the lower slope."""
        return expit(-np.asarray(z, dtype=float) / self.s)

    def evaluate(self, z: np.ndarray | float) -> np.ndarray | float:
        """Value of the transition map."""
        z = np.asarray(z, dtype=float)
        f = self.weight(z)
        return (f * self.a1 + (1.0 - f) * self.a2) * z

    def __call__(self, z: np.ndarray | float) -> np.ndarray | float:
        return self.evaluate(z)

    def derivative(self, z: np.ndarray | float) -> np.ndarray | float:
        """Analytic derivative ``F a1 + (1 - F) a2 - (z / s) F (1 - F) (a1 - a2)``."""
        z = np.asarray(z, dtype=float)
        f = self.weight(z)
        return f * self.a1 + (1.0 - f) * self.a2 - (z / self.s) * f * (1.0 - f) * (self.a1 - self.a2)

    def kink(self) -> PwaMap:
        """The piecewise-linear limit as a scalar threshold map."""
        return PwaMap.threshold([1.0], [0.0], [[0.0], [0.0]], [[[self.a1]], [[self.a2]]])


def logistic_transition(a1: float, a2: float, s: float) -> LogisticTransitionMap:
    """Construct the logistic smooth-transition map with lower slope `a1`, upper slope `a2` and scale `s`."""
    return LogisticTransitionMap(float(a1), float(a2), float(s))


@dataclass(frozen=True)
class MonotonicityReport:
    """Outcome of :func:`check_scalar_monotone`.

    Attributes
    ----------
    monotone : bool
        True iff every grid increment is nonzero with one common sign.
    violation_point : float | None
        Left grid point of the first increment that breaks the sign of the first one.
    direction : int
        Sign of the first increment (+1 increasing, -1 decreasing, 0 flat).
    """

    monotone: bool
    violation_point: float | None
    direction: int


def check_scalar_monotone(f: Callable, lo: float, hi: float, n: int = 1000) -> MonotonicityReport:
    """Scan ``f`` on an equispaced grid of `n` points over ``[lo, hi]`` for strict monotonicity.

    Parameters
    ----------
    f : Callable
        Vectorized scalar map.
    lo, hi : float
        Grid end points, ``lo < hi``.
    n : int, default=1000
        Grid size, at least 100.

    Returns
    -------
    MonotonicityReport
    """
    if n < 100:
        raise ValueError(f"grid size n must be at least 100. Got {n}")
    if not lo < hi:
        raise ValueError(f"lo must be smaller than hi. Got [{lo}, {hi}]")

    grid = np.linspace(lo, hi, n)
    vals = np.asarray(f(grid), dtype=float).ravel()
    signs = np.sign(np.diff(vals))
    direction = int(signs[0])
    bad = np.flatnonzero(signs != direction) if direction != 0 else np.array([0])
    if bad.size == 0:
        return MonotonicityReport(monotone=True, violation_point=None, direction=direction)
    return MonotonicityReport(monotone=False, violation_point=float(grid[bad[0]]), direction=direction)


@dataclass(frozen=True)
class TransitionCounterexample:
    """Logistic transition that is not monotone while the Gaussian-smoothed kink with the same slopes is."""

    a1: float
    a2: float
    s: float
    violation_point: float
    gaussian_monotone: bool


def scan_transition_counterexample(
    a1_grid: list | np.ndarray = (0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0),
    a2_grid: list | np.ndarray = (0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0),
    s_grid: list | np.ndarray = (0.1, 0.5, 1.0),
    span: float = 10.0,
    n: int = 2001,
) -> TransitionCounterexample | None:
    """Grid-scan slope pairs and scales for a non-invertible logistic transition whose Gaussian counterpart is invertible.

    Both slopes are positive in every grid cell, so the kink itself is invertible; the Gaussian-smoothed
    kink (bandwidth ``s``) is then monotone, while the logistic map may fold. The first hit in scan order
    is returned.

    Parameters
    ----------
    a1_grid, a2_grid, s_grid : sequence of float
        Candidate lower slopes, upper slopes and transition scales (all positive).
    span : float, default=10.0
        The monotonicity grid covers ``[-span * s, span * s]``.
    n : int, default=2001
        Grid size.

    Returns
    -------
    TransitionCounterexample | None
        First violating triple, or None if the grid contains none.
    """
    for s, a1, a2 in itertools.product(s_grid, a1_grid, a2_grid):
        if a1 <= 0 or a2 <= 0 or a1 == a2:
            continue
        st = logistic_transition(a1, a2, s)
        rep = check_scalar_monotone(st.evaluate, -span * s, span * s, n)
        if rep.monotone:
            continue
        smoothed = smooth_threshold_affine(st.kink(), GaussianKernelSpec(s))
        gauss_rep = check_scalar_monotone(lambda g: smoothed.evaluate(np.asarray(g)[:, None])[:, 0], -span * s, span * s, n)
        if gauss_rep.monotone:
            return TransitionCounterexample(a1=float(a1), a2=float(a2), s=float(s), violation_point=rep.violation_point, gaussian_monotone=True)
    return None


def transition_panel(a1: float, a2: float, s: float, bandwidth: float = None, lo: float = -3.0, hi: float = 3.0, n: int = 601) -> pd.DataFrame:
    """Tabulate the kink, its logistic transition and its Gaussian smoothing on a grid.

    Returns
    -------
    pd.DataFrame
        Columns ``z, base, logistic, gaussian_smoothed``.
    """
    st = logistic_transition(a1, a2, s)
    base = st.kink()
    smoothed = smooth_threshold_affine(base, GaussianKernelSpec(bandwidth if bandwidth is not None else s))
    z = np.linspace(lo, hi, n)
    return pd.DataFrame(
        {
            "z": z,
            "base": base.evaluate(z[:, None])[:, 0],
            "logistic": st.evaluate(z),
            "gaussian_smoothed": smoothed.evaluate(z[:, None])[:, 0],
        }
    )
