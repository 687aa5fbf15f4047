"""Global invertibility certificate, regime-enumeration inverse and Lipschitz diagnostics for piecewise-affine maps."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np

from pwasvar.exceptions import NotInvertible, AmbiguousInverse, DimensionTooLarge
from pwasvar.pwa.pwa_map import PwaMap
from pwasvar.random import substream


@dataclass(frozen=True)
class InvertibilityCertificate:
    """Result of the determinant condition check.

    Attributes
    ----------
    invertible : bool
        True iff every recorded determinant is nonzero and all share one sign.
    sign : int | None
        Common determinant sign (+1 or -1), or None when not invertible.
    determinants : np.ndarray
        Per-regime determinants (threshold maps) or per-sign-pattern determinants of the split-form
        matrices ``Psi^(m)`` (conic maps).
    failing : tuple[int, ...]
        Regime labels (threshold) or sign-pattern indices (conic) that are zero or carry the minority sign.
    kind : str
        ``"threshold"`` or ``"conic"``.
    zero_floor : float
        Magnitude at or below which a determinant counted as zero.
    """

    invertible: bool
    sign: int | None
    determinants: np.ndarray
    failing: tuple[int, ...]
    kind: str
    zero_floor: float

    def summary(self) -> str:
        """One-line human-readable verdict."""
        if self.invertible:
            return f"invertible ({self.kind}, {self.determinants.size} determinants, common sign {self.sign:+d})"
        return f"NOT invertible ({self.kind}): determinant condition fails at {list(self.failing)}"

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return {
            "invertible": self.invertible,
            "sign": self.sign,
            "kind": self.kind,
            "determinants": self.determinants.tolist(),
            "failing": list(self.failing),
            "zero_floor": self.zero_floor,
        }


def check_invertibility(pwa_map: PwaMap, det_tol: float = 1e-10, max_conic_dim: int = 20) -> InvertibilityCertificate:
    """Certify global invertibility of a continuous piecewise-affine map.

    The map is a bi-Lipschitz bijection iff all regime matrices (threshold maps) or all ``2**p``
    split-form orthant matrices (conic maps) have nonzero determinants of a common sign.

    Parameters
    ----------
    pwa_map : PwaMap
        Continuity-validated map.
    det_tol : float, default=1e-10
        A determinant with ``|det| <= det_tol * scale**p`` counts as zero, `scale` being the largest
        spectral norm among the matrices.
    max_conic_dim : int, default=20
        Cap on `p` for the ``2**p`` enumeration.

    Returns
    -------
    InvertibilityCertificate

    Raises
    ------
    DimensionTooLarge
        If the map is conic with ``p > max_conic_dim``.
    """
    p = pwa_map.p

    if pwa_map.kind == "threshold":
        mats = pwa_map.matrices
        scale = float(np.max(np.linalg.norm(mats, ord=2, axis=(1, 2))))
        dets = np.linalg.det(mats)
        ids = np.arange(1, pwa_map.n_regimes + 1)
    else:
        if p > max_conic_dim:
            raise DimensionTooLarge(f"Conic certificate enumerates 2**p orthants; p={p} exceeds cap {max_conic_dim}")
        scale = max(float(np.linalg.norm(pwa_map.psi_plus, 2)), float(np.linalg.norm(pwa_map.psi_minus, 2)))
        chunks = [np.linalg.det(psi) for _, psi in pwa_map.iter_orthant_matrices()]
        dets = np.concatenate(chunks)
        ids = np.arange(pwa_map.partition.n_patterns)

    zero_floor = det_tol * scale**p
    nonzero = np.abs(dets) > zero_floor
    signs = np.sign(dets) * nonzero
    n_pos, n_neg = int(np.sum(signs > 0)), int(np.sum(signs < 0))

    if n_pos >= n_neg and n_pos > 0:
        ref = 1
    elif n_neg > 0:
        ref = -1
    else:
        ref = 0

    failing = tuple(int(i) for i in ids[signs != ref]) if ref != 0 else tuple(int(i) for i in ids)
    invertible = not failing
    return InvertibilityCertificate(
        invertible=invertible, sign=ref if invertible else None, determinants=dets, failing=failing, kind=pwa_map.kind, zero_floor=zero_floor
    )


def _invert_threshold(pwa_map: PwaMap, w: np.ndarray, boundary_tol: float) -> np.ndarray:
    part = pwa_map.partition
    n = w.shape[0]
    n_regimes = pwa_map.n_regimes
    sols = np.full((n_regimes, n, pwa_map.p), np.nan)
    accept = np.zeros((n_regimes, n), dtype=bool)
    interior = np.zeros((n_regimes, n), dtype=bool)

    for ell in range(n_regimes):
        try:
            z = np.linalg.solve(pwa_map.matrices[ell], (w - pwa_map.intercepts[ell]).T).T
        except np.linalg.LinAlgError:
            continue
        s = z @ part.direction
        lo, hi = part.bounds(ell + 1)
        tol = boundary_tol * (1.0 + np.abs(s))
        accept[ell] = (s > lo - tol) & (s <= hi + tol)
        interior[ell] = (s > lo + tol) & (s < hi - tol)
        sols[ell] = z

    return _select(sols, accept, interior)


def _invert_conic(pwa_map: PwaMap, w: np.ndarray, boundary_tol: float) -> np.ndarray:
    part = pwa_map.partition
    n = w.shape[0]
    n_patterns = part.n_patterns
    # Candidates are kept in label order so ties resolve to the lowest label.
    order = np.argsort(part.labels, kind="stable")
    sols = np.full((n_patterns, n, pwa_map.p), np.nan)
    accept = np.zeros((n_patterns, n), dtype=bool)
    interior = np.zeros((n_patterns, n), dtype=bool)

    for rank, m in enumerate(order):
        bits = part.pattern_bits(m)
        psi = np.where(bits[None, :], pwa_map.psi_plus, pwa_map.psi_minus)
        try:
            y = np.linalg.solve(psi, w.T).T
        except np.linalg.LinAlgError:
            continue
        tol = boundary_tol * (1.0 + np.abs(y))
        ok = np.where(bits[None, :], y >= -tol, y <= tol)
        strict = np.where(bits[None, :], y > tol, y < -tol)
        accept[rank] = ok.all(axis=1)
        interior[rank] = strict.all(axis=1)
        sols[rank] = y @ part.basis_inv.T

    return _select(sols, accept, interior)


def _select(sols: np.ndarray, accept: np.ndarray, interior: np.ndarray) -> np.ndarray:
    n_interior = interior.sum(axis=0)
    if np.any(n_interior >= 2):
        bad = int(np.argmax(n_interior >= 2))
        raise AmbiguousInverse(f"{int(n_interior[bad])} regimes accept target #{bad} away from the boundaries; the map is not injective")
    if not np.all(accept.any(axis=0)):
        bad = int(np.argmin(accept.any(axis=0)))
        raise NotInvertible(f"No regime accepts target #{bad}; the map is not surjective there")

    # A single interior candidate wins; otherwise the first (lowest-label) boundary candidate.
    choice = np.where(n_interior == 1, np.argmax(interior, axis=0), np.argmax(accept, axis=0))
    return sols[choice, np.arange(sols.shape[1])]


def invert(pwa_map: PwaMap, w: np.ndarray, boundary_tol: float = 1e-10) -> np.ndarray:
    """Solve ``f(z) = w`` by regime enumeration.

    For each regime (threshold maps) or sign pattern (conic maps) the affine system is solved and the
    solution is accepted iff it lies in that regime, up to `boundary_tol` in the threshold coordinate.

    Parameters
    ----------
    pwa_map : PwaMap
        Map whose certificate is invertible.
    w : np.ndarray
        Target of shape (p,) or a batch of shape (n, p).
    boundary_tol : float, default=1e-10
        Relative boundary tolerance.

    Returns
    -------
    np.ndarray
        The preimage, with the shape of `w`.

    Raises
    ------
    NotInvertible
        If no regime accepts the target.
    AmbiguousInverse
        If two or more regimes accept it away from the boundaries.
    """
    w = np.asarray(w, dtype=float)
    batch = np.atleast_2d(w)
    if pwa_map.kind == "threshold":
        z = _invert_threshold(pwa_map, batch, boundary_tol)
    else:
        z = _invert_conic(pwa_map, batch, boundary_tol)
    return z[0] if w.ndim == 1 else z


def _fold_witness(lower: np.ndarray, upper: np.ndarray, normal: np.ndarray, room_lower: float, room_upper: float) -> tuple:
    """Displacements ``u`` (lower side) and ``v`` (upper side) of a boundary point with ``lower u = upper v``.

    With ``upper = lower + m normal'`` and ``k = 1 + normal' lower^-1 m < 0``, the choice
    ``v = t normal / |normal|^2`` gives ``u = lower^-1 upper v`` with ``normal'u = k t < 0``.
    """
    nn = float(normal @ normal)
    m = (upper - lower) @ normal / nn
    k = 1.0 + float(normal @ np.linalg.solve(lower, m))
    t = 0.5 * min(room_upper, room_lower / max(abs(k), 1e-300), 1.0)
    v = normal * (t / nn)
    u = np.linalg.solve(lower, upper @ v)
    return u, v


def find_collision(pwa_map: PwaMap, det_tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray] | None:
    """Exhibit two distinct points with equal images when the determinant condition fails.

    Parameters
    ----------
    pwa_map : PwaMap
        Continuous map.
    det_tol : float, default=1e-10
        Determinant floor passed to :func:`check_invertibility`.

    Returns
    -------
    tuple[np.ndarray, np.ndarray] | None
        ``(x, x_prime)`` with ``x != x_prime`` and ``f(x) == f(x_prime)``, or None for invertible maps.
    """
    cert = check_invertibility(pwa_map, det_tol=det_tol)
    if cert.invertible:
        return None

    part = pwa_map.partition
    dets = cert.determinants
    zero = np.abs(dets) <= cert.zero_floor

    if pwa_map.kind == "threshold":
        a = part.direction
        if np.any(zero):
            ell = int(np.argmax(zero))
            _, _, vt = np.linalg.svd(pwa_map.matrices[ell])
            null = vt[-1]
            x = part.interior_point(ell + 1)
            lo, hi = part.bounds(ell + 1)
            width = min(hi - lo, 2.0) if np.isfinite(hi - lo) else 2.0
            step = 0.25 * width / max(abs(float(a @ null)), 1.0)
            return x, x + step * null

        for ell in range(1, pwa_map.n_regimes):
            if np.sign(dets[ell]) != np.sign(dets[ell - 1]):
                tau = part.thresholds[ell - 1]
                base = a * (tau / float(a @ a))
                lo, _ = part.bounds(ell)
                _, hi = part.bounds(ell + 1)
                room_lower = (tau - lo) if np.isfinite(lo) else 1.0
                room_upper = (hi - tau) if np.isfinite(hi) else 1.0
                u, v = _fold_witness(pwa_map.matrices[ell - 1], pwa_map.matrices[ell], a, room_lower, room_upper)
                return base + u, base + v
        return None

    basis, basis_inv = part.basis, part.basis_inv
    if np.any(zero):
        m = int(np.argmax(zero))
        bits = part.pattern_bits(m)
        psi = np.where(bits[None, :], pwa_map.psi_plus, pwa_map.psi_minus)
        _, _, vt = np.linalg.svd(psi)
        y = np.where(bits, 1.0, -1.0)
        step = 0.5 / max(np.max(np.abs(vt[-1])), 1e-300)
        return basis_inv @ y, basis_inv @ (y + step * vt[-1])

    for m in range(part.n_patterns):
        for i in range(pwa_map.p):
            if (m >> i) & 1:
                continue
            m_up = m | (1 << i)
            if np.sign(dets[m]) != np.sign(dets[m_up]):
                bits = part.pattern_bits(m)
                lower = np.where(bits[None, :], pwa_map.psi_plus, pwa_map.psi_minus)
                upper = np.where(part.pattern_bits(m_up)[None, :], pwa_map.psi_plus, pwa_map.psi_minus)
                y0 = np.where(bits, 1.0, -1.0)
                y0[i] = 0.0
                normal = np.eye(pwa_map.p)[i]
                u, v = _fold_witness(lower, upper, normal, 1.0, 1.0)
                # Keep the other coordinates inside their orthant.
                shrink = 0.5 / max(np.max(np.abs(u)), np.max(np.abs(v)), 0.5)
                return basis_inv @ (y0 + shrink * u), basis_inv @ (y0 + shrink * v)
    return None


def lipschitz_bound(pwa_map: PwaMap) -> float:
    """Upper Lipschitz constant ``max_l ||Phi_l||_2`` of a continuous piecewise-affine map."""
    return float(np.max(np.linalg.norm(pwa_map.matrices, ord=2, axis=(1, 2))))


def lower_lipschitz_estimate(pwa_map: PwaMap, n_pairs: int = 2000, seed: int = 42) -> float:
    """Sampled estimate of ``inf ||f(x) - f(y)|| / ||x - y||``.

    This is an estimate from random pairs, not a bound: the true constant can only be smaller.
    """
    rng = substream(seed, 0)
    if pwa_map.kind == "threshold" and pwa_map.partition.thresholds.size:
        spread = 1.0 + float(np.max(np.abs(pwa_map.partition.thresholds))) / np.linalg.norm(pwa_map.partition.direction)
    else:
        spread = 1.0
    x = spread * rng.standard_normal((n_pairs, pwa_map.p))
    y = spread * rng.standard_normal((n_pairs, pwa_map.p))
    num = np.linalg.norm(pwa_map.evaluate(x) - pwa_map.evaluate(y), axis=1)
    den = np.linalg.norm(x - y, axis=1)
    return float(np.min(num / den))
