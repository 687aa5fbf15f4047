"""Class defining the piecewise-affine structural VAR ``f0(z_t) = c + sum_i f_i(z_(t-i)) + sigma eps_t``."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from typing import Any

import numpy as np

from pwasvar.exceptions import HistoryLengthMismatch, ModelValidationError, NotInvertible
from pwasvar.model.skedastic import SkedasticSpec
from pwasvar.pwa import PwaMap, InvertibilityCertificate, check_invertibility, invert

LOG_2PI = float(np.log(2.0 * np.pi))


def lag_histories(data: np.ndarray, k: int) -> np.ndarray:
    """Stack the chronological k-lag histories of ``data[k:]``; shape (T-k, k, p), last row ``z_(t-1)``."""
    data = np.asarray(data, dtype=float)
    n = data.shape[0] - k
    if n <= 0:
        raise HistoryLengthMismatch(f"Need more than k={k} observations. Got {data.shape[0]}")
    return np.stack([data[i : i + n] for i in range(k)], axis=1)


class PwaSvarModel:
    """Piecewise-affine SVAR with Gaussian structural shocks.

    Parameters
    ----------
    f0 : PwaMap
        Contemporaneous map; its determinant condition must hold.
    lags : list[PwaMap]
        Lag maps ``f_1, ..., f_k`` sharing the partition of `f0`.
    intercept : array-like of shape (p,)
        Intercept `c`.
    shocks : SkedasticSpec, optional
        Skedastic function; homoskedastic when omitted.
    intercept_shifts : array-like of shape (L, p), optional
        Intercept shift keyed by the regime of ``z_(t-1)``; the first row must be zero.
    det_tol : float, default=1e-10
        Determinant floor of the invertibility certificate.

    Attributes
    ----------
    certificate : InvertibilityCertificate
        Certificate of `f0`.
    p, k, n_regimes : int
        Dimension, lag order and number of regimes.

    Raises
    ------
    NotInvertible
        If `f0` fails the determinant condition.
    ModelValidationError
        On dimension or partition mismatches.
    """

    def __init__(
        self,
        f0: PwaMap,
        lags: list[PwaMap],
        intercept: np.ndarray | list,
        shocks: SkedasticSpec = None,
        intercept_shifts: np.ndarray | list = None,
        det_tol: float = 1e-10,
    ):
        if not isinstance(f0, PwaMap):
            raise ModelValidationError(f"f0 must be a PwaMap. Got {type(f0).__name__}")
        lags = list(lags)
        if len(lags) < 1:
            raise ModelValidationError("At least one lag map is required.")

        p = f0.p
        for i, f in enumerate(lags, start=1):
            if not isinstance(f, PwaMap) or f.p != p:
                raise ModelValidationError(f"Lag map {i} must be a PwaMap of dimension {p}.")
            if f.partition != f0.partition:
                raise ModelValidationError(f"Lag map {i} does not share the partition of f0.")
            f.validate_continuity(strict=True)
        f0.validate_continuity(strict=True)

        c = np.array(intercept, dtype=float).ravel()
        if c.shape != (p,):
            raise ModelValidationError(f"intercept must have length {p}. Got {c.size}")

        shocks = shocks if shocks is not None else SkedasticSpec.homoskedastic(p)
        if shocks.p != p:
            raise ModelValidationError(f"Skedastic spec has p={shocks.p}, model has p={p}")
        if shocks.variant == "regime" and shocks.lag > len(lags):
            raise ModelValidationError(f"Skedastic lag {shocks.lag} exceeds the lag order {len(lags)}")

        shifts = None
        if intercept_shifts is not None:
            shifts = np.array(intercept_shifts, dtype=float)
            if shifts.shape != (f0.n_regimes, p):
                raise ModelValidationError(f"intercept_shifts must have shape ({f0.n_regimes}, {p}). Got {shifts.shape}")
            if np.any(shifts[0] != 0.0):
                raise ModelValidationError("The intercept shift of regime 1 must be zero.")
            shifts.setflags(write=False)

        cert = check_invertibility(f0, det_tol=det_tol)
        if not cert.invertible:
            raise NotInvertible(f"f0 violates the determinant condition (nonzero determinants of a common sign): {cert.summary()}")

        c.setflags(write=False)
        self.f0: PwaMap = f0
        self.lags: tuple[PwaMap, ...] = tuple(lags)
        self.intercept: np.ndarray = c
        self.shocks: SkedasticSpec = shocks
        self.intercept_shifts: np.ndarray | None = shifts
        self.certificate: InvertibilityCertificate = cert
        self.det_tol: float = det_tol
        self.p: int = p
        self.k: int = len(lags)
        self.n_regimes: int = f0.n_regimes
        self.partition = f0.partition
        self._logabsdet: np.ndarray = np.linalg.slogdet(f0.matrices)[1]

    # Structural equations

    def _check_history(self, history: np.ndarray) -> np.ndarray:
        history = np.asarray(history, dtype=float)
        if history.ndim not in (2, 3) or history.shape[-2] != self.k or history.shape[-1] != self.p:
            raise HistoryLengthMismatch(f"history must have shape ({self.k}, {self.p}) or (n, {self.k}, {self.p}). Got {history.shape}")
        return history

    def rhs_mean(self, history: np.ndarray, v: Any = None) -> np.ndarray:
        """``c + sum_i f_i(z_(t-i))`` (plus the regime-keyed intercept shift, if any).

        Parameters
        ----------
        history : np.ndarray
            Chronological lag history of shape (k, p) or batch (n, k, p); the last row is ``z_(t-1)``.
        v : Any, optional
            Unused by the mean; accepted for a uniform signature.

        Raises
        ------
        HistoryLengthMismatch
            If the history does not hold exactly k rows.
        """
        history = self._check_history(history)
        out = np.broadcast_to(self.intercept, history.shape[:-2] + (self.p,)).copy()
        for i, f in enumerate(self.lags, start=1):
            out += f.evaluate(history[..., -i, :])
        if self.intercept_shifts is not None:
            out += self.intercept_shifts[np.asarray(self.partition.regime_of(history[..., -1, :])) - 1]
        return out

    def sigma(self, history: np.ndarray, v: Any = None) -> np.ndarray:
        """Diagonal of the conditional shock standard deviation."""
        return self.shocks.sigma_diag(history, v, self.partition)

    def solve_step(self, history: np.ndarray, eps: np.ndarray, v: Any = None) -> tuple[np.ndarray, int | np.ndarray]:
        """Solve ``f0(z_t) = rhs_mean + sigma eps`` for ``z_t``; batch shapes (n, k, p) and (n, p) are supported.

        Returns
        -------
        tuple
            ``(z_t, regime_label)``.
        """
        target = self.rhs_mean(history, v) + self.sigma(history, v) * np.asarray(eps, dtype=float)
        z = invert(self.f0, target)
        return z, self.f0.regime_of(z)

    def conditional_log_density(self, xi: np.ndarray, history: np.ndarray, v: Any = None) -> float | np.ndarray:
        """``log rho(sigma^-1 [f0(xi) - rhs_mean]) + log|det Df0(xi)| - log det sigma`` with standard Gaussian ``rho``.

        Parameters
        ----------
        xi : np.ndarray
            Point of shape (p,) or batch (n, p).
        history : np.ndarray
            Matching history of shape (k, p) or (n, k, p).
        v : Any, optional
            Exogenous dummy level(s) for the dummy skedastic variant.
        """
        xi = np.asarray(xi, dtype=float)
        sd = self.sigma(history, v)
        u = (self.f0.evaluate(xi) - self.rhs_mean(history, v)) / sd
        labels = np.asarray(self.f0.regime_of(xi))
        out = -0.5 * self.p * LOG_2PI - 0.5 * np.sum(u * u, axis=-1) + self._logabsdet[labels - 1] - np.sum(np.log(sd), axis=-1)
        return float(out) if np.ndim(out) == 0 else out

    def log_density_series(self, data: np.ndarray, exog: np.ndarray = None) -> np.ndarray:
        """Per-period conditional log-densities of ``data[k:]`` given the preceding observations.

        Parameters
        ----------
        data : np.ndarray
            Observations of shape (T, p), ``T > k``.
        exog : np.ndarray, optional
            Dummy series of length T (dummy skedastic variant).

        Returns
        -------
        np.ndarray
            Shape (T - k,).
        """
        data = np.asarray(data, dtype=float)
        hist = lag_histories(data, self.k)
        v = None if exog is None else np.asarray(exog)[self.k :]
        return np.atleast_1d(self.conditional_log_density(data[self.k :], hist, v))

    def structural_residuals(self, data: np.ndarray, exog: np.ndarray = None) -> np.ndarray:
        """Standardized structural shocks ``sigma^-1 [f0(z_t) - rhs_mean]`` for ``t = k+1..T``."""
        data = np.asarray(data, dtype=float)
        hist = lag_histories(data, self.k)
        v = None if exog is None else np.asarray(exog)[self.k :]
        return (self.f0.evaluate(data[self.k :]) - self.rhs_mean(hist, v)) / self.sigma(hist, v)

    # Transforms and diagnostics

    def rotated(self, Q: np.ndarray) -> "PwaSvarModel":
        """Model with ``(Q f0, Q c, Q f_i)`` and conjugated skedastic variances."""
        Q = np.asarray(Q, dtype=float)
        shifts = None if self.intercept_shifts is None else self.intercept_shifts @ Q.T
        return PwaSvarModel(
            self.f0.rotated(Q), [f.rotated(Q) for f in self.lags], Q @ self.intercept, self.shocks.rotated(Q), shifts, self.det_tol
        )

    def lag_rank(self, tol: float = None) -> int:
        """Rank of the horizontally stacked lag regime matrices (a diagnostic, not a surjectivity certificate)."""
        stacked = np.hstack([m for f in self.lags for m in f.matrices])
        return int(np.linalg.matrix_rank(stacked, tol=tol))

    def regime_spectral_radii(self) -> np.ndarray:
        """Spectral radius of the companion matrix of each regime's fixed linear system ``z_t = sum_i Phi0^-1 Phi_i z_(t-i)``."""
        radii = []
        p, k = self.p, self.k
        for ell in range(self.n_regimes):
            a0_inv = np.linalg.inv(self.f0.matrices[ell])
            companion = np.zeros((p * k, p * k))
            companion[:p, :] = np.hstack([a0_inv @ f.matrices[ell] for f in self.lags])
            if k > 1:
                companion[p:, :-p] = np.eye(p * (k - 1))
            radii.append(float(np.max(np.abs(np.linalg.eigvals(companion)))))
        return np.array(radii)

    def with_shocks(self, shocks: SkedasticSpec) -> "PwaSvarModel":
        """Copy of the model with another skedastic function."""
        return PwaSvarModel(self.f0, self.lags, self.intercept, shocks, self.intercept_shifts, self.det_tol)

    def smoothed(self, kernel: Any) -> "SmoothedSvarModel":
        """Model whose contemporaneous map is the Gaussian-smoothed `f0` (threshold-affine only)."""
        from pwasvar.smoothing import smooth_threshold_affine

        return SmoothedSvarModel(self, smooth_threshold_affine(self.f0, kernel))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PwaSvarModel):
            return NotImplemented
        shifts_equal = (self.intercept_shifts is None and other.intercept_shifts is None) or (
            self.intercept_shifts is not None
            and other.intercept_shifts is not None
            and np.array_equal(self.intercept_shifts, other.intercept_shifts)
        )
        return (
            self.f0 == other.f0
            and self.lags == other.lags
            and np.array_equal(self.intercept, other.intercept)
            and self.shocks == other.shocks
            and shifts_equal
        )

    def __repr__(self) -> str:
        return f"PwaSvarModel(p={self.p}, k={self.k}, n_regimes={self.n_regimes}, kind={self.f0.kind!r}, shocks={self.shocks.variant!r})"


class SmoothedSvarModel:
    """A :class:`PwaSvarModel` whose contemporaneous map is replaced by its Gaussian smoothing.

    Exposes the smoothed conditional density and structural solve; estimation targets the unsmoothed model.
    """

    def __init__(self, base: PwaSvarModel, f0_smooth: Any):
        self.base: PwaSvarModel = base
        self.f0 = f0_smooth
        self.p: int = base.p
        self.k: int = base.k

    def rhs_mean(self, history: np.ndarray, v: Any = None) -> np.ndarray:
        return self.base.rhs_mean(history, v)

    def solve_step(self, history: np.ndarray, eps: np.ndarray, v: Any = None) -> np.ndarray:
        """Solve ``f0_K(z_t) = rhs_mean + sigma eps``."""
        from pwasvar.smoothing import invert_smooth

        target = self.base.rhs_mean(history, v) + self.base.sigma(history, v) * np.asarray(eps, dtype=float)
        return invert_smooth(self.f0, target)

    def conditional_log_density(self, xi: np.ndarray, history: np.ndarray, v: Any = None) -> float | np.ndarray:
        """Gaussian log-density with the analytic Jacobian of the smoothed map."""
        xi = np.asarray(xi, dtype=float)
        sd = self.base.sigma(history, v)
        u = (self.f0.evaluate(xi) - self.base.rhs_mean(history, v)) / sd
        logdet = np.linalg.slogdet(self.f0.jacobian_at(xi))[1]
        out = -0.5 * self.p * LOG_2PI - 0.5 * np.sum(u * u, axis=-1) + logdet - np.sum(np.log(sd), axis=-1)
        return float(out) if np.ndim(out) == 0 else out


def rhs_mean(model: PwaSvarModel, history: np.ndarray, v: Any = None) -> np.ndarray:
    """Right-hand-side mean of `model` given `history`."""
    return model.rhs_mean(history, v)


def solve_step(model: PwaSvarModel, history: np.ndarray, eps: np.ndarray, v: Any = None) -> tuple:
    """Structural solve of `model` for one period."""
    return model.solve_step(history, eps, v)


def conditional_log_density(model: PwaSvarModel, xi: np.ndarray, history: np.ndarray, v: Any = None) -> float | np.ndarray:
    """Conditional log-density of `xi` under `model`."""
    return model.conditional_log_density(xi, history, v)
