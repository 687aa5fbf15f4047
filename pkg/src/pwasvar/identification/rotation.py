"""Orthogonal rotations of piecewise-affine SVARs: reduced-form normalization and observational equivalence."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import orthogonal_procrustes, qr

from pwasvar.exceptions import BoundaryAnchor, InsufficientProbes, ModelValidationError, NotEquivalent, NotOrthogonal, SkedasticNotDiagonalizable
from pwasvar.model import PwaSvarModel
from pwasvar.pwa import ThresholdPartition
from pwasvar.random import substream


@dataclass(frozen=True)
class RotationNormalization:
    """Factorization ``Df0(z0) = Q' L`` with Q orthogonal and L lower triangular with a positive diagonal.

    Attributes
    ----------
    anchor : np.ndarray
        Anchor point ``z0``.
    Q : np.ndarray
        Orthogonal matrix; the normalized model is the original rotated by ``Q``.
    L : np.ndarray
        Lower-triangular factor, equal to ``Q Df0(z0)``.
    """

    anchor: np.ndarray
    Q: np.ndarray
    L: np.ndarray

    def reconstruction_error(self, jacobian: np.ndarray) -> float:
        return float(np.max(np.abs(self.Q.T @ self.L - jacobian)))


def ql_factor(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(Q, L)`` with ``matrix = Q' L``, Q orthogonal and L lower triangular with ``L_ii > 0``.

    Obtained from the QR factorization of the row- and column-reversed matrix.
    """
    M = np.asarray(matrix, dtype=float)
    rev = M[::-1, ::-1]
    q1, r1 = qr(rev)
    q_prime = q1[::-1, ::-1]
    L = r1[::-1, ::-1]
    signs = np.where(np.diag(L) < 0, -1.0, 1.0)
    L = signs[:, None] * L
    q_prime = q_prime * signs[None, :]
    Q = q_prime.T
    # Exact zeros above the diagonal.
    L = np.tril(L)
    return Q, L


def orthogonal_reduced_form(model: PwaSvarModel, z0: np.ndarray, boundary_tol: float = 1e-10) -> tuple[PwaSvarModel, np.ndarray]:
    """Rotate `model` so that ``Dg0(z0)`` is lower triangular with a positive diagonal.

    Parameters
    ----------
    model : PwaSvarModel
        Model to normalize.
    z0 : np.ndarray
        Anchor point; must be a differentiability point of ``f0``.
    boundary_tol : float, default=1e-10
        Minimum distance from the regime boundaries.

    Returns
    -------
    tuple
        ``(normalized_model, Q)``.

    Raises
    ------
    BoundaryAnchor
        If `z0` lies on a regime boundary.
    """
    norm = rotation_normalization(model, z0, boundary_tol)
    return rotate_model(model, norm.Q), norm.Q


def rotation_normalization(model: PwaSvarModel, z0: np.ndarray, boundary_tol: float = 1e-10) -> RotationNormalization:
    """The :class:`RotationNormalization` of ``f0`` at `z0`."""
    z0 = np.asarray(z0, dtype=float).ravel()
    if z0.shape != (model.p,):
        raise ModelValidationError(f"z0 must have length {model.p}. Got {z0.size}")
    dist = model.partition.distance_to_boundary(z0)
    if np.isfinite(dist) and dist <= boundary_tol:
        raise BoundaryAnchor(f"z0={z0.tolist()} lies on a regime boundary (distance {dist:.3e})")
    Q, L = ql_factor(model.f0.jacobian_at(z0))
    return RotationNormalization(anchor=z0, Q=Q, L=L)


def check_orthogonal(Q: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Return `Q` as a float array, raising :class:`NotOrthogonal` unless ``QQ' = I`` within `tol`."""
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise NotOrthogonal(f"Q must be square. Got shape {Q.shape}")
    err = float(np.max(np.abs(Q @ Q.T - np.eye(Q.shape[0]))))
    if err > tol:
        raise NotOrthogonal(f"QQ' deviates from the identity by {err:.3e}")
    return Q


def rotate_model(model: PwaSvarModel, Q: np.ndarray) -> PwaSvarModel:
    """Apply `Q` to every map, the intercept and the skedastic variances.

    Raises
    ------
    NotOrthogonal
        If `Q` is not orthogonal within 1e-8.
    SkedasticNotDiagonalizable
        If some conjugated variance matrix is not diagonal.
    """
    Q = check_orthogonal(Q)
    if Q.shape[0] != model.p:
        raise NotOrthogonal(f"Q must be {model.p} x {model.p}. Got {Q.shape}")
    return model.rotated(Q)


def probe_points(model: PwaSvarModel, n_per_regime: int = None, seed: int = 42, stream: int = 0) -> np.ndarray:
    """Random points covering every regime (every orthant pattern for conic maps) at least `n_per_regime` times.

    Parameters
    ----------
    model : PwaSvarModel
        Model whose partition is probed.
    n_per_regime : int, optional
        Points per regime; defaults to ``p + 1``.
    seed : int, default=42
        Seed of the draws.
    stream : int, default=0
        Substream index, so that validation sets differ from fitting sets.

    Returns
    -------
    np.ndarray
        Shape (n, p).
    """
    p = model.p
    n = p + 1 if n_per_regime is None else int(n_per_regime)
    rng = substream(seed, stream)
    part = model.partition
    points = []
    if isinstance(part, ThresholdPartition):
        a = part.direction
        for label in range(1, part.n_regimes + 1):
            lo, hi = part.bounds(label)
            x = rng.standard_normal((n, p))
            x -= np.outer(x @ a, a) / (a @ a)
            if np.isfinite(lo) and np.isfinite(hi):
                s = lo + (hi - lo) * (0.05 + 0.9 * rng.random(n))
            elif np.isfinite(hi):
                s = hi - 0.05 - rng.exponential(1.0, n)
            elif np.isfinite(lo):
                s = lo + 0.05 + rng.exponential(1.0, n)
            else:
                s = rng.standard_normal(n)
            points.append(x + np.outer(s, a) / (a @ a))
    else:
        for m in range(part.n_patterns):
            bits = part.pattern_bits(m)
            y = np.where(bits, 1.0, -1.0) * (0.05 + rng.exponential(1.0, (n, p)))
            points.append(y @ part.basis_inv.T)
    return np.vstack(points)


def _max_residual(A: PwaSvarModel, B: PwaSvarModel, Q: np.ndarray, probes: np.ndarray) -> float:
    resid = [np.max(np.abs(A.f0.evaluate(probes) @ Q.T - B.f0.evaluate(probes)))]
    for fa, fb in zip(A.lags, B.lags):
        resid.append(np.max(np.abs(fa.evaluate(probes) @ Q.T - fb.evaluate(probes))))
    resid.append(np.max(np.abs(Q @ A.intercept - B.intercept)))
    if A.intercept_shifts is not None or B.intercept_shifts is not None:
        sa = np.zeros((A.n_regimes, A.p)) if A.intercept_shifts is None else A.intercept_shifts
        sb = np.zeros((B.n_regimes, B.p)) if B.intercept_shifts is None else B.intercept_shifts
        resid.append(np.max(np.abs(sa @ Q.T - sb)))
    return float(max(resid))


def find_rotation(
    A: PwaSvarModel, B: PwaSvarModel, probes: np.ndarray = None, tol: float = 1e-7, seed: int = 42
) -> np.ndarray:
    """Find the orthogonal Q with ``B = Q A``, or report that the models are not observationally equivalent.

    Q solves the orthogonal Procrustes problem on stacked ``f0`` evaluations and is then checked
    on a fresh validation set against every lag map and the intercept.

    Parameters
    ----------
    A, B : PwaSvarModel
        Models with equal dimension, lag order and partition.
    probes : np.ndarray, optional
        Fitting points; defaults to :func:`probe_points`.
    tol : float, default=1e-7
        Validation tolerance, relative to ``max(1, max |f0^B|)`` on the validation set.
    seed : int, default=42
        Seed of the probe draws.

    Returns
    -------
    np.ndarray
        The orthogonal matrix Q.

    Raises
    ------
    InsufficientProbes
        With fewer than ``p(p+1)/2`` probes or a regime left unprobed.
    NotEquivalent
        When the best rotation leaves a residual above `tol`.
    """
    if (A.p, A.k, A.n_regimes) != (B.p, B.k, B.n_regimes):
        raise NotEquivalent(np.inf, f"Models differ in (p, k, L): {(A.p, A.k, A.n_regimes)} vs {(B.p, B.k, B.n_regimes)}")
    p = A.p
    probes = probe_points(A, seed=seed, stream=0) if probes is None else np.atleast_2d(np.asarray(probes, dtype=float))
    if probes.shape[0] < p * (p + 1) // 2:
        raise InsufficientProbes(f"Need at least {p * (p + 1) // 2} probes. Got {probes.shape[0]}")
    hit = set(np.atleast_1d(A.partition.regime_of(probes)).tolist())
    missing = set(range(1, A.n_regimes + 1)) - hit
    if missing:
        raise InsufficientProbes(f"Probes miss regimes {sorted(missing)}")

    # orthogonal_procrustes returns R minimizing ||FA R - FB||; rows are evaluations, so Q = R'.
    R, _ = orthogonal_procrustes(A.f0.evaluate(probes), B.f0.evaluate(probes))
    Q = R.T

    validation = probe_points(A, seed=seed, stream=1)
    scale = max(1.0, float(np.max(np.abs(B.f0.evaluate(validation)))))
    resid = _max_residual(A, B, Q, validation)
    if resid > tol * scale:
        raise NotEquivalent(resid, f"No rotation maps A onto B: max residual {resid:.3e}")

    try:
        rotated_shocks = A.shocks.rotated(Q)
    except SkedasticNotDiagonalizable as err:
        raise NotEquivalent(np.inf, f"Skedastic variances are not compatible with the rotation: {err}") from err
    va, vb = rotated_shocks.variances(), B.shocks.variances()
    if va.keys() != vb.keys() or any(np.max(np.abs(va[key] - vb[key])) > tol * max(1.0, np.max(vb[key])) for key in va):
        raise NotEquivalent(np.inf, "Skedastic variances differ after rotation")

    logging.debug(f"find_rotation: validation residual {resid:.3e}")
    return Q
