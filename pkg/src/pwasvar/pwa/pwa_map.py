"""Class defining continuous piecewise-affine maps on R^p."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from pwasvar.exceptions import ContinuityViolation, ModelValidationError
from pwasvar.pwa.partition import ThresholdPartition, ConicPartition

Partition = ThresholdPartition | ConicPartition


@dataclass(frozen=True)
class ContinuityReport:
    """Outcome of :meth:`PwaMap.validate_continuity`.

    Attributes
    ----------
    passed : bool
        True when every condition holds within tolerance.
    violations : list[tuple[tuple[int, int], str, float]]
        ``(regime_pair, condition, residual)`` for each failed condition. `condition` is ``"matrix"``
        (difference not of the form ``m a'``), ``"intercept"`` (intercept jump inconsistent with the
        threshold) or ``"split_form"`` (conic map differs from its canonical split form).
    max_residual : float
        Largest residual over all checked conditions, failed or not.
    """

    passed: bool
    violations: list = field(default_factory=list)
    max_residual: float = 0.0


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class PwaMap:
    """Continuous piecewise-affine map ``f(z) = phi_l + Phi_l z`` on regime ``l`` of a partition.

    Parameters
    ----------
    partition : ThresholdPartition | ConicPartition
        Regime partition of R^p.
    intercepts : array-like of shape (L, p)
        Per-regime intercepts. Must be zero for conic partitions.
    matrices : array-like of shape (L, p, p)
        Per-regime matrices.
    validate : bool, default=True
        Check continuity on construction and raise :class:`ContinuityViolation` if it fails.
    tol : float, default=1e-9
        Relative tolerance of the continuity check.

    Attributes
    ----------
    psi_plus, psi_minus : np.ndarray or None
        For conic maps, the canonical split form in y coordinates: column ``i`` holds the slope of
        coordinate ``y_i`` on its nonnegative and negative side respectively.

    Examples
    --------
    >>> f = PwaMap.threshold([1.0], [0.0], [[0.0], [0.0]], [[[-1.0]], [[1.0]]])
    >>> f.evaluate(np.array([-2.0]))
    array([2.])
    """

    def __init__(
        self, partition: Partition, intercepts: np.ndarray | list, matrices: np.ndarray | list, validate: bool = True, tol: float = 1e-9
    ):
        if not isinstance(partition, (ThresholdPartition, ConicPartition)):
            raise ModelValidationError(f"partition must be a ThresholdPartition or ConicPartition. Got {type(partition).__name__}")

        p, n_regimes = partition.p, partition.n_regimes
        phi = np.array(intercepts, dtype=float)
        mats = np.array(matrices, dtype=float)

        if phi.shape != (n_regimes, p):
            raise ModelValidationError(f"intercepts must have shape ({n_regimes}, {p}). Got {phi.shape}")
        if mats.shape != (n_regimes, p, p):
            raise ModelValidationError(f"matrices must have shape ({n_regimes}, {p}, {p}). Got {mats.shape}")
        if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(mats))):
            raise ModelValidationError("intercepts and matrices must be finite.")
        if partition.kind == "conic" and np.any(phi != 0.0):
            raise ModelValidationError("Piecewise-linear (conic) maps must have zero intercepts.")

        self.partition: Partition = partition
        self.intercepts: np.ndarray = _readonly(phi)
        self.matrices: np.ndarray = _readonly(mats)
        self.p: int = p
        self.n_regimes: int = n_regimes
        self.kind: str = partition.kind
        self.psi_plus: np.ndarray | None = None
        self.psi_minus: np.ndarray | None = None

        if self.kind == "conic":
            # Slopes in y coordinates read off the all-nonnegative and all-negative orthants.
            all_plus = partition.labels[partition.n_patterns - 1]
            all_minus = partition.labels[0]
            self.psi_plus = _readonly(mats[all_plus - 1] @ partition.basis_inv)
            self.psi_minus = _readonly(mats[all_minus - 1] @ partition.basis_inv)

        if validate:
            self.validate_continuity(tol=tol, strict=True)

    # Constructors

    @classmethod
    def threshold(
        cls, direction: np.ndarray | list, thresholds: np.ndarray | list, intercepts: np.ndarray | list, matrices: np.ndarray | list, **kwargs
    ) -> "PwaMap":
        """Build a threshold-affine map from explicit per-regime intercepts and matrices."""
        return cls(ThresholdPartition(direction, thresholds), intercepts, matrices, **kwargs)

    @classmethod
    def linear(cls, matrix: np.ndarray | list, intercept: np.ndarray | list = None) -> "PwaMap":
        """Build a single-regime affine map ``z -> intercept + matrix z``."""
        mat = np.atleast_2d(np.array(matrix, dtype=float))
        p = mat.shape[0]
        phi = np.zeros(p) if intercept is None else np.array(intercept, dtype=float).ravel()
        return cls(ThresholdPartition(np.eye(p)[0], []), phi[None, :], mat[None, :, :])

    @classmethod
    def from_threshold_steps(
        cls,
        direction: np.ndarray | list,
        thresholds: np.ndarray | list,
        base_intercept: np.ndarray | list,
        base_matrix: np.ndarray | list,
        steps: np.ndarray | list,
    ) -> "PwaMap":
        """Build a continuous threshold-affine map from the lowest regime and its rank-one steps.

        Regime ``l`` is ``Phi_l = Phi_(l-1) + m_l a'`` and ``phi_l = phi_(l-1) - tau_(l-1) m_l``, which
        makes the map continuous at every threshold.

        Parameters
        ----------
        direction : array-like of shape (p,)
            Threshold direction `a`.
        thresholds : array-like of shape (L-1,)
            Strictly increasing thresholds.
        base_intercept : array-like of shape (p,)
            Intercept of regime 1.
        base_matrix : array-like of shape (p, p)
            Matrix of regime 1.
        steps : array-like of shape (L-1, p)
            Step vectors ``m_2, ..., m_L``.

        Returns
        -------
        PwaMap
            The continuous map.
        """
        partition = ThresholdPartition(direction, thresholds)
        a, tau = partition.direction, partition.thresholds
        m = np.array(steps, dtype=float).reshape(tau.size, partition.p)

        phi = [np.array(base_intercept, dtype=float).ravel()]
        mats = [np.array(base_matrix, dtype=float).reshape(partition.p, partition.p)]
        for ell in range(tau.size):
            mats.append(mats[-1] + np.outer(m[ell], a))
            phi.append(phi[-1] - tau[ell] * m[ell])

        return cls(partition, np.array(phi), np.array(mats))

    @classmethod
    def from_split_form(
        cls, basis: np.ndarray | list, psi_plus: np.ndarray | list, psi_minus: np.ndarray | list, labels: np.ndarray | list = None
    ) -> "PwaMap":
        """Build a piecewise-linear map ``g(y) = sum_i [psi_i^+ 1{y_i >= 0} + psi_i^- 1{y_i < 0}] y_i`` with ``y = A z``.

        Parameters
        ----------
        basis : array-like of shape (p, p)
            Invertible matrix `A`.
        psi_plus, psi_minus : array-like of shape (p, p)
            Column ``i`` is ``psi_i^+`` (resp. ``psi_i^-``).
        labels : array-like of shape (2**p,), optional
            Regime labels per sign pattern; sign patterns sharing a label must share a matrix.

        Returns
        -------
        PwaMap
            The conic map; continuous by construction.
        """
        partition = ConicPartition(basis, labels)
        plus = np.array(psi_plus, dtype=float)
        minus = np.array(psi_minus, dtype=float)
        if plus.shape != (partition.p, partition.p) or minus.shape != (partition.p, partition.p):
            raise ModelValidationError(f"psi_plus and psi_minus must have shape ({partition.p}, {partition.p}).")

        mats = np.empty((partition.n_regimes, partition.p, partition.p))
        seen = np.zeros(partition.n_regimes, dtype=bool)
        for m in range(partition.n_patterns):
            label = partition.labels[m]
            if seen[label - 1]:
                continue
            bits = partition.pattern_bits(m)
            mats[label - 1] = np.where(bits[None, :], plus, minus) @ partition.basis
            seen[label - 1] = True

        return cls(partition, np.zeros((partition.n_regimes, partition.p)), mats)

    # Evaluation

    def regime_of(self, z: np.ndarray) -> int | np.ndarray:
        """Regime label of `z` (lower label on threshold boundaries, ``y_i >= 0`` counts as + on conic faces)."""
        return self.partition.regime_of(z)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Evaluate the map at one point of shape (p,) or a batch of shape (n, p)."""
        z = np.asarray(z, dtype=float)
        idx = np.asarray(self.regime_of(z)) - 1
        if z.ndim == 1:
            return self.intercepts[idx] + self.matrices[idx] @ z
        return self.intercepts[idx] + np.einsum("nij,nj->ni", self.matrices[idx], z)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return self.evaluate(z)

    def jacobian_at(self, z: np.ndarray) -> np.ndarray:
        """Jacobian ``Phi_l`` of the regime containing `z`; shape (p, p) or (n, p, p) for a batch."""
        idx = np.asarray(self.regime_of(z)) - 1
        return self.matrices[idx].copy()

    def iter_orthant_matrices(self, chunk_size: int = 4096) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(pattern_indices, Psi)`` chunks of the y-coordinate split-form matrices of a conic map."""
        if self.kind != "conic":
            raise ModelValidationError("Orthant matrices are defined for conic maps only.")
        n_patterns = self.partition.n_patterns
        shifts = np.arange(self.p)
        for start in range(0, n_patterns, chunk_size):
            ms = np.arange(start, min(start + chunk_size, n_patterns))
            bits = ((ms[:, None] >> shifts[None, :]) & 1).astype(bool)
            yield ms, np.where(bits[:, None, :], self.psi_plus[None], self.psi_minus[None])

    # Validation

    def validate_continuity(self, tol: float = 1e-9, strict: bool = False) -> ContinuityReport:
        """Check the continuity conditions of the map.

        Threshold maps: for every adjacent pair, ``Phi_l - Phi_(l-1) = m a'`` and
        ``phi_l - phi_(l-1) = -tau_(l-1) m``. Conic maps: every regime matrix equals the split form
        assembled from ``psi^+`` and ``psi^-`` for each of its sign patterns.

        Parameters
        ----------
        tol : float, default=1e-9
            Residuals up to ``tol * max(1, scale)`` pass, with `scale` the largest entry magnitude.
        strict : bool, default=False
            Raise :class:`ContinuityViolation` for the first failing condition instead of reporting it.

        Returns
        -------
        ContinuityReport
        """
        scale = max(1.0, float(np.max(np.abs(self.matrices))), float(np.max(np.abs(self.intercepts), initial=0.0)))
        limit = tol * scale
        violations = []
        max_residual = 0.0

        if self.kind == "threshold":
            a = self.partition.direction
            proj = np.eye(self.p) - np.outer(a, a) / (a @ a)
            for ell in range(1, self.n_regimes):
                diff = self.matrices[ell] - self.matrices[ell - 1]
                m = diff @ a / (a @ a)
                res_mat = float(np.linalg.norm(diff @ proj))
                tau = self.partition.thresholds[ell - 1]
                res_int = float(np.linalg.norm(self.intercepts[ell] - self.intercepts[ell - 1] + tau * m))
                pair = (ell, ell + 1)
                for cond, res in (("matrix", res_mat), ("intercept", res_int)):
                    max_residual = max(max_residual, res)
                    if res > limit:
                        violations.append((pair, cond, res))
        else:
            labels = self.partition.labels
            ref_label = int(labels[-1])
            for ms, psi in self.iter_orthant_matrices():
                implied = psi @ self.partition.basis
                res = np.linalg.norm(self.matrices[labels[ms] - 1] - implied, axis=(1, 2))
                max_residual = max(max_residual, float(res.max()))
                for m in ms[res > limit]:
                    violations.append(((ref_label, int(labels[m])), "split_form", float(res[m - ms[0]])))

        if strict and violations:
            pair, cond, res = violations[0]
            raise ContinuityViolation(pair, res, f"Continuity violated ({cond}) between regimes {pair[0]} and {pair[1]}: residual {res:.3e}")

        return ContinuityReport(passed=not violations, violations=violations, max_residual=max_residual)

    # Transforms

    def rotated(self, Q: np.ndarray) -> "PwaMap":
        """Return the map ``z -> Q f(z)`` on the same partition."""
        Q = np.asarray(Q, dtype=float)
        return PwaMap(self.partition, self.intercepts @ Q.T, np.einsum("ij,ljk->lik", Q, self.matrices), validate=False)

    def scaled(self, factor: float) -> "PwaMap":
        """Return ``z -> factor * f(z)``."""
        return PwaMap(self.partition, factor * self.intercepts, factor * self.matrices, validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PwaMap):
            return NotImplemented
        return (
            self.partition == other.partition
            and np.array_equal(self.intercepts, other.intercepts)
            and np.array_equal(self.matrices, other.matrices)
        )

    def __repr__(self) -> str:
        return f"PwaMap(kind={self.kind!r}, p={self.p}, n_regimes={self.n_regimes})"


def regime_of(pwa_map: PwaMap, z: np.ndarray) -> int | np.ndarray:
    """Regime label of `z` under `pwa_map`."""
    return pwa_map.regime_of(z)


def evaluate(pwa_map: PwaMap, z: np.ndarray) -> np.ndarray:
    """Value of `pwa_map` at `z`."""
    return pwa_map.evaluate(z)


def jacobian_at(pwa_map: PwaMap, z: np.ndarray) -> np.ndarray:
    """Jacobian of `pwa_map` at `z` (lower-regime convention on boundaries)."""
    return pwa_map.jacobian_at(z)


def validate_continuity(pwa_map: PwaMap, tol: float = 1e-9, strict: bool = False) -> ContinuityReport:
    """Continuity report of `pwa_map`."""
    return pwa_map.validate_continuity(tol=tol, strict=strict)
