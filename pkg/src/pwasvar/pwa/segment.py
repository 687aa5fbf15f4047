"""Segment decomposition of a piecewise-affine map: ``f(x'') - f(x') = Phi (x'' - x')`` with ``Phi`` a convex combination of regime matrices."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import warnings
from dataclasses import dataclass

import numpy as np

from pwasvar.exceptions import DegenerateSegment
from pwasvar.pwa.pwa_map import PwaMap


@dataclass(frozen=True)
class SegmentDecomposition:
    """Decomposition of the segment ``x(delta) = (1 - delta) x' + delta x''`` into regime pieces.

    Attributes
    ----------
    breakpoints : np.ndarray
        ``0 = delta_0 < delta_1 < ... < delta_(m+1) = 1``.
    weights : np.ndarray
        Piece lengths ``delta_(i+1) - delta_i``; nonnegative and summing to one.
    labels : np.ndarray
        Regime label of each piece.
    matrix : np.ndarray
        Effective matrix ``sum_i weights_i Phi_(labels_i)``.
    residual : float
        ``||f(x'') - f(x') - matrix (x'' - x')||``.
    """

    breakpoints: np.ndarray
    weights: np.ndarray
    labels: np.ndarray
    matrix: np.ndarray
    residual: float


def _crossings(pwa_map: PwaMap, x1: np.ndarray, d: np.ndarray) -> np.ndarray:
    part = pwa_map.partition
    if pwa_map.kind == "threshold":
        slope = float(part.direction @ d)
        if slope == 0.0 or part.thresholds.size == 0:
            return np.empty(0)
        return (part.thresholds - float(part.direction @ x1)) / slope

    y1 = part.coordinates(x1)
    yd = part.coordinates(d)
    moving = yd != 0.0
    return -y1[moving] / yd[moving]


def segment_decomposition(pwa_map: PwaMap, x1: np.ndarray, x2: np.ndarray) -> SegmentDecomposition:
    """Split the segment from `x1` to `x2` at its regime crossings.

    Parameters
    ----------
    pwa_map : PwaMap
        Continuous map.
    x1, x2 : np.ndarray
        Endpoints of shape (p,).

    Returns
    -------
    SegmentDecomposition

    Warns
    -----
    DegenerateSegment
        If ``x1 == x2``; the result then has one piece of weight one carrying the local matrix.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    d = x2 - x1

    if not np.any(d):
        warnings.warn(f"Degenerate segment: endpoints coincide at {x1.tolist()}", DegenerateSegment, stacklevel=2)
        label = pwa_map.regime_of(x1)
        return SegmentDecomposition(
            breakpoints=np.array([0.0, 1.0]),
            weights=np.array([1.0]),
            labels=np.array([label]),
            matrix=pwa_map.matrices[label - 1].copy(),
            residual=0.0,
        )

    deltas = _crossings(pwa_map, x1, d)
    inner = np.unique(deltas[(deltas > 0.0) & (deltas < 1.0)])
    breakpoints = np.concatenate(([0.0], inner, [1.0]))
    weights = np.diff(breakpoints)

    mids = 0.5 * (breakpoints[:-1] + breakpoints[1:])
    labels = np.asarray(pwa_map.regime_of(x1[None, :] + mids[:, None] * d[None, :])).ravel()
    matrix = np.einsum("i,ijk->jk", weights, pwa_map.matrices[labels - 1])

    residual = float(np.linalg.norm(pwa_map.evaluate(x2) - pwa_map.evaluate(x1) - matrix @ d))
    return SegmentDecomposition(breakpoints=breakpoints, weights=weights, labels=labels, matrix=matrix, residual=residual)
