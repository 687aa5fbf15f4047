"""Classes defining the regime partitions of piecewise-affine maps."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np

from pwasvar.exceptions import ModelValidationError, DimensionTooLarge


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class ThresholdPartition:
    """Partition of R^p into parallel bands ``{tau_(l-1) < a'z <= tau_l}``.

    Parameters
    ----------
    direction : array-like of shape (p,)
        Nonzero threshold direction `a`.
    thresholds : array-like of shape (L-1,)
        Strictly increasing finite thresholds. May be empty (single regime).

    Attributes
    ----------
    direction : np.ndarray
        Read-only copy of `a`.
    thresholds : np.ndarray
        Read-only copy of the thresholds.
    p : int
        Dimension of the space.
    n_regimes : int
        Number of bands, ``len(thresholds) + 1``.

    Notes
    -----
    Bands are half-open on the left, so a point exactly on a threshold belongs to the lower band.
    """

    kind = "threshold"

    def __init__(self, direction: np.ndarray | list, thresholds: np.ndarray | list):
        a = np.array(direction, dtype=float).ravel()
        t = np.array(thresholds, dtype=float).ravel()

        if a.size == 0:
            raise ModelValidationError("direction must have at least one entry.")
        if not np.all(np.isfinite(a)) or np.linalg.norm(a) == 0.0:
            raise ModelValidationError(f"direction must be finite and nonzero. Got {a}")
        if not np.all(np.isfinite(t)):
            raise ModelValidationError(f"thresholds must be finite. Got {t}")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ModelValidationError(f"thresholds must be strictly increasing. Got {t}")

        self.direction: np.ndarray = _readonly(a)
        self.thresholds: np.ndarray = _readonly(t)
        self.p: int = a.size
        self.n_regimes: int = t.size + 1

    def index(self, z: np.ndarray) -> np.ndarray | float:
        """Threshold coordinate ``a'z`` for one point or a batch of shape (n, p)."""
        return np.asarray(z, dtype=float) @ self.direction

    def regime_of(self, z: np.ndarray) -> int | np.ndarray:
        """Regime label (1-based) of one point, or an array of labels for a batch."""
        s = self.index(z)
        labels = np.searchsorted(self.thresholds, s, side="left") + 1
        return int(labels) if np.ndim(labels) == 0 else labels

    def bounds(self, label: int) -> tuple[float, float]:
        """Lower and upper threshold of band `label`, with infinities at the ends."""
        if not 1 <= label <= self.n_regimes:
            raise ValueError(f"label must be in 1..{self.n_regimes}. Got {label}")
        lo = -np.inf if label == 1 else float(self.thresholds[label - 2])
        hi = np.inf if label == self.n_regimes else float(self.thresholds[label - 1])
        return lo, hi

    def distance_to_boundary(self, z: np.ndarray) -> float | np.ndarray:
        """Euclidean distance from `z` to the nearest threshold hyperplane (inf for one regime)."""
        s = np.asarray(self.index(z), dtype=float)
        if self.thresholds.size == 0:
            return np.full(s.shape, np.inf) if s.ndim else np.inf
        d = np.min(np.abs(s[..., None] - self.thresholds), axis=-1) / np.linalg.norm(self.direction)
        return float(d) if np.ndim(d) == 0 else d

    def interior_point(self, label: int) -> np.ndarray:
        """A point well inside band `label`, lying on the line spanned by the direction."""
        lo, hi = self.bounds(label)
        if np.isfinite(lo) and np.isfinite(hi):
            s = 0.5 * (lo + hi)
        elif np.isfinite(hi):
            s = hi - 1.0
        elif np.isfinite(lo):
            s = lo + 1.0
        else:
            s = 0.0
        return self.direction * (s / float(self.direction @ self.direction))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThresholdPartition):
            return NotImplemented
        return np.array_equal(self.direction, other.direction) and np.array_equal(self.thresholds, other.thresholds)

    def __hash__(self) -> int:
        return hash((self.kind, self.direction.tobytes(), self.thresholds.tobytes()))

    def __repr__(self) -> str:
        return f"ThresholdPartition(direction={self.direction.tolist()}, thresholds={self.thresholds.tolist()})"


class ConicPartition:
    """Partition of R^p into the orthants of the coordinates ``y = A z``.

    Parameters
    ----------
    basis : array-like of shape (p, p)
        Invertible matrix `A` whose rows are the vectors ``a_i``.
    labels : array-like of shape (2**p,), optional
        Regime label of each sign pattern. Pattern ``m`` has bit ``i`` set when ``y_i >= 0``.
        Defaults to ``m + 1`` (one regime per orthant). Labels must cover ``1..L`` without gaps.
    det_tol : float, default=1e-10
        Relative floor below which ``|det A|`` counts as zero.
    max_conic_dim : int, default=20
        Largest supported dimension.

    Raises
    ------
    DimensionTooLarge
        If ``p > max_conic_dim``.
    ModelValidationError
        If `A` is singular or the label map is malformed.
    """

    kind = "conic"

    def __init__(self, basis: np.ndarray | list, labels: np.ndarray | list = None, det_tol: float = 1e-10, max_conic_dim: int = 20):
        A = np.array(basis, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise ModelValidationError(f"basis must be a nonempty square matrix. Got shape {A.shape}")
        p = A.shape[0]
        if p > max_conic_dim:
            raise DimensionTooLarge(f"Conic partitions are limited to p <= {max_conic_dim}. Got p={p}")
        if not np.all(np.isfinite(A)):
            raise ModelValidationError("basis must be finite.")
        scale = np.linalg.norm(A, 2)
        if abs(np.linalg.det(A)) <= det_tol * scale**p:
            raise ModelValidationError("basis matrix must be invertible.")

        n_patterns = 2**p
        if labels is None:
            lab = np.arange(1, n_patterns + 1)
        else:
            lab = np.array(labels).ravel()
            if lab.size != n_patterns:
                raise ModelValidationError(f"labels must assign all {n_patterns} sign patterns. Got {lab.size}")
            if not np.all(np.equal(np.mod(lab, 1), 0)):
                raise ModelValidationError("labels must be integers.")
            lab = lab.astype(int)
            if set(lab.tolist()) != set(range(1, int(lab.max()) + 1)) or lab.min() != 1:
                raise ModelValidationError("labels must cover 1..L with no gaps.")

        self.basis: np.ndarray = _readonly(A)
        self.basis_inv: np.ndarray = _readonly(np.linalg.inv(A))
        self.labels: np.ndarray = _readonly(lab)
        self.p: int = p
        self.n_patterns: int = n_patterns
        self.n_regimes: int = int(lab.max())
        self._weights: np.ndarray = 1 << np.arange(p)

    def coordinates(self, z: np.ndarray) -> np.ndarray:
        """Transformed coordinates ``y = A z`` for one point or a batch."""
        return np.asarray(z, dtype=float) @ self.basis.T

    def pattern_of(self, z: np.ndarray) -> int | np.ndarray:
        """Sign-pattern index ``sum_i 2**i * 1{y_i >= 0}``."""
        bits = (self.coordinates(z) >= 0).astype(np.int64)
        m = bits @ self._weights
        return int(m) if np.ndim(m) == 0 else m

    def pattern_bits(self, m: int) -> np.ndarray:
        """Boolean sign pattern of index `m` (True means ``y_i >= 0``)."""
        return ((int(m) >> np.arange(self.p)) & 1).astype(bool)

    def regime_of(self, z: np.ndarray) -> int | np.ndarray:
        """Regime label (1-based) of one point, or an array of labels for a batch."""
        m = self.pattern_of(z)
        labels = self.labels[m]
        return int(labels) if np.ndim(labels) == 0 else labels

    def distance_to_boundary(self, z: np.ndarray) -> float | np.ndarray:
        """Smallest ``|y_i| / ||a_i||`` over coordinates, the distance to the nearest face hyperplane."""
        y = np.abs(self.coordinates(z)) / np.linalg.norm(self.basis, axis=1)
        d = np.min(y, axis=-1)
        return float(d) if np.ndim(d) == 0 else d

    def interior_point(self, m: int) -> np.ndarray:
        """A point inside the orthant of pattern `m`, at unit distance from every face in y coordinates."""
        y = np.where(self.pattern_bits(m), 1.0, -1.0)
        return self.basis_inv @ y

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConicPartition):
            return NotImplemented
        return np.array_equal(self.basis, other.basis) and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash((self.kind, self.basis.tobytes(), self.labels.tobytes()))

    def __repr__(self) -> str:
        return f"ConicPartition(p={self.p}, n_regimes={self.n_regimes})"
