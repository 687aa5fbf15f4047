"""Identification gains from conditional heteroskedasticity of the structural shocks."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np

from pwasvar.identification.rotation import check_orthogonal

NONE_EXTRA = "none-extra"
BLOCK = "block"
SIGNED_PERMUTATION = "signed-permutation"


@dataclass(frozen=True)
class HeteroClass:
    """Restriction class on Q implied by the variance evaluations.

    Attributes
    ----------
    kind : str
        ``"none-extra"``, ``"block"`` or ``"signed-permutation"``.
    groups : tuple[tuple[int, ...], ...]
        Zero-based variable indices whose variances are equal at every evaluation point; Q may mix
        variables only within a group.
    """

    kind: str
    groups: tuple

    def to_dict(self) -> dict:
        return {"class": self.kind, "groups": [list(g) for g in self.groups]}


def _as_diagonal(evaluation: np.ndarray) -> np.ndarray:
    e = np.asarray(evaluation, dtype=float)
    return np.diag(e) if e.ndim == 2 else e.ravel()


def _close(x: float, y: float, rel_tol: float) -> bool:
    return abs(x - y) <= rel_tol * max(abs(x), abs(y))


def hetero_identification_class(evaluations: list, rel_tol: float = 1e-6) -> HeteroClass:
    """Classify the rotations left free by the shock variances.

    Parameters
    ----------
    evaluations : list of np.ndarray
        Variance evaluations ``sigma^2``, each a diagonal matrix or its diagonal.
    rel_tol : float, default=1e-6
        Relative gap below which two variances count as equal.

    Returns
    -------
    HeteroClass
        Signed permutations when some evaluation has pairwise distinct variances, no extra
        restriction when every evaluation is a multiple of the identity, block otherwise.

    Examples
    --------
    >>> hetero_identification_class([np.ones(2)]).kind
    'none-extra'
    """
    diags = [_as_diagonal(e) for e in evaluations]
    if not diags:
        raise ValueError("At least one evaluation is required.")
    p = diags[0].size

    def distinct(d):
        return all(not _close(d[i], d[j], rel_tol) for i in range(p) for j in range(i + 1, p))

    if any(distinct(d) for d in diags):
        return HeteroClass(SIGNED_PERMUTATION, tuple((i,) for i in range(p)))
    if all(all(_close(d[i], d[0], rel_tol) for i in range(p)) for d in diags):
        return HeteroClass(NONE_EXTRA, (tuple(range(p)),))

    groups = []
    for i in range(p):
        for g in groups:
            if all(_close(d[i], d[g[0]], rel_tol) for d in diags):
                g.append(i)
                break
        else:
            groups.append([i])
    return HeteroClass(BLOCK, tuple(tuple(g) for g in groups))


def is_diagonalizing_rotation(Q: np.ndarray, sigma2: np.ndarray, rel_tol: float = 1e-8) -> bool:
    """True when ``Q sigma^2 Q'`` is diagonal up to ``rel_tol`` times its largest diagonal entry.

    Raises
    ------
    NotOrthogonal
        If `Q` is not orthogonal within 1e-8.
    """
    Q = check_orthogonal(Q)
    rot = Q @ np.diag(_as_diagonal(sigma2)) @ Q.T
    off = rot - np.diag(np.diag(rot))
    return bool(np.max(np.abs(off)) <= rel_tol * np.max(np.abs(np.diag(rot))))


def scan_admissible_rotations(sigma2: np.ndarray, n_angles: int = 3600, rel_tol: float = 1e-8) -> list[np.ndarray]:
    """All 2 x 2 rotations and reflections on an angle grid that keep `sigma2` diagonal."""
    d = _as_diagonal(sigma2)
    if d.size != 2:
        raise ValueError(f"The rotation scan covers p = 2 only. Got p = {d.size}")
    admissible = []
    for theta in 2.0 * np.pi * np.arange(n_angles) / n_angles:
        c, s = np.cos(theta), np.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        for Q in (rot, rot @ np.diag([1.0, -1.0])):
            if is_diagonalizing_rotation(Q, d, rel_tol):
                admissible.append(Q)
    return admissible


def is_signed_permutation(Q: np.ndarray, tol: float = 1e-3) -> bool:
    """True when every row and column of `Q` has one entry within `tol` of +-1 and the rest within `tol` of 0."""
    A = np.abs(np.asarray(Q, dtype=float))
    near_one = np.abs(A - 1.0) <= tol
    near_zero = A <= tol
    return bool(np.all(near_one | near_zero) and np.all(near_one.sum(axis=0) == 1) and np.all(near_one.sum(axis=1) == 1))
