"""Closed-form Gaussian smoothing of threshold-affine maps and inversion of the smoothed map."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging

import numpy as np
from scipy.optimize import brentq
from scipy.stats import norm

from pwasvar.exceptions import NotThresholdAffine, NoConvergence
from pwasvar.pwa import PwaMap, invert
from pwasvar.smoothing.gaussian_kernel import GaussianKernelSpec


class SmoothedThresholdMap:
    """Exact convolution ``f_K(z) = E[f(z + u)]``, ``u ~ N(0, h^2 I)``, of a continuous threshold-affine map.

    A continuous threshold map is ``f(z) = Phi_1 z + phi_1 + sum_j m_j (a'z - tau_j)_+``, so smoothing
    only acts on the scalar index ``s = a'z``, which is ``N(s, sigma_a^2)`` under the kernel with
    ``sigma_a = h ||a||``. Each ramp convolves to ``x Phi(x / sigma_a) + sigma_a phi(x / sigma_a)`` with
    ``x = s - tau_j``.

    Parameters
    ----------
    base : PwaMap
        Continuous threshold-affine map.
    kernel : GaussianKernelSpec
        Smoothing kernel.

    Attributes
    ----------
    steps : np.ndarray
        Shape (L-1, p); ``m_j`` with ``Phi_(j+1) = Phi_j + m_j a'``.
    sigma_a : float
        Standard deviation of the smoothed index.
    """

    def __init__(self, base: PwaMap, kernel: GaussianKernelSpec):
        if not isinstance(base, PwaMap) or base.kind != "threshold":
            raise NotThresholdAffine("Closed-form smoothing requires a threshold-affine map; use smooth_numeric for conic maps.")

        a = base.partition.direction
        self.base: PwaMap = base
        self.kernel: GaussianKernelSpec = kernel
        self.bandwidth: float = kernel.bandwidth
        self.direction: np.ndarray = a
        self.thresholds: np.ndarray = base.partition.thresholds
        self.sigma_a: float = kernel.sigma_along(a)
        self.base_matrix: np.ndarray = base.matrices[0]
        self.base_intercept: np.ndarray = base.intercepts[0]
        self.steps: np.ndarray = np.diff(base.matrices, axis=0) @ a / float(a @ a)
        self.p: int = base.p

    def index(self, z: np.ndarray) -> np.ndarray | float:
        """Scalar index ``a'z``."""
        return np.asarray(z, dtype=float) @ self.direction

    def ramp(self, s: np.ndarray | float) -> np.ndarray:
        """Smoothed ramps ``E[(s + v - tau_j)_+]``, shape ``s.shape + (L-1,)``."""
        x = np.asarray(s, dtype=float)[..., None] - self.thresholds
        r = x / self.sigma_a
        return x * norm.cdf(r) + self.sigma_a * norm.pdf(r)

    def exceedance(self, s: np.ndarray | float) -> np.ndarray:
        """``P(s + v > tau_j)`` for each threshold, shape ``s.shape + (L-1,)``."""
        x = np.asarray(s, dtype=float)[..., None] - self.thresholds
        return norm.cdf(x / self.sigma_a)

    def band_weights(self, z: np.ndarray) -> np.ndarray:
        """Probabilities that ``a'(z + u)`` falls in each band; shape (L,) or (n, L), rows sum to one."""
        e = self.exceedance(self.index(z))
        ones = np.ones(e.shape[:-1] + (1,))
        zeros = np.zeros(e.shape[:-1] + (1,))
        upper = np.concatenate([ones, e], axis=-1)
        lower = np.concatenate([e, zeros], axis=-1)
        return upper - lower

    def g_smooth(self, s: np.ndarray | float) -> np.ndarray:
        """Smoothed nonlinear part ``G(s) = sum_j m_j ramp_j(s)``, shape ``s.shape + (p,)``."""
        return self.ramp(s) @ self.steps

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Smoothed map at one point or a batch."""
        z = np.asarray(z, dtype=float)
        return z @ self.base_matrix.T + self.base_intercept + self.g_smooth(self.index(z))

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return self.evaluate(z)

    def jacobian_at(self, z: np.ndarray) -> np.ndarray:
        """Analytic Jacobian ``sum_l P_l(z) Phi_l``, a convex combination of the regime matrices."""
        return np.einsum("...l,lij->...ij", self.band_weights(z), self.base.matrices)

    def __repr__(self) -> str:
        return f"SmoothedThresholdMap(p={self.p}, n_regimes={self.base.n_regimes}, bandwidth={self.bandwidth})"


def smooth_threshold_affine(pwa_map: PwaMap, kernel: GaussianKernelSpec) -> SmoothedThresholdMap:
    """Gaussian-smooth a continuous threshold-affine map in closed form.

    Parameters
    ----------
    pwa_map : PwaMap
        Threshold-affine map. Invertibility of the result is guaranteed when the map's certificate is.
    kernel : GaussianKernelSpec
        Smoothing kernel.

    Returns
    -------
    SmoothedThresholdMap

    Raises
    ------
    NotThresholdAffine
        For conic maps.

    Examples
    --------
    >>> relu = PwaMap.threshold([1.0], [0.0], [[0.0], [0.0]], [[[0.0]], [[1.0]]])
    >>> smooth_threshold_affine(relu, GaussianKernelSpec(1.0)).evaluate(np.array([0.0]))
    array([0.39894228])
    """
    return SmoothedThresholdMap(pwa_map, kernel)


def _newton(sm: SmoothedThresholdMap, w: np.ndarray, z0: np.ndarray, tol: float, budget: int, max_stalls: int) -> tuple:
    """Damped Newton; returns ``(z, converged, iterations_used)``."""
    z = z0.copy()
    res = sm.evaluate(z) - w
    res_norm = float(np.linalg.norm(res))
    stalls = 0
    for it in range(budget):
        if res_norm <= tol:
            return z, True, it
        step = np.linalg.solve(sm.jacobian_at(z), -res)
        t = 1.0
        while True:
            trial = z + t * step
            trial_res = sm.evaluate(trial) - w
            trial_norm = float(np.linalg.norm(trial_res))
            if trial_norm < res_norm:
                break
            t *= 0.5
            stalls += 1
            if stalls >= max_stalls or t < 1e-12:
                return z, res_norm <= tol, it + 1
        z, res, res_norm = trial, trial_res, trial_norm
    return z, res_norm <= tol, budget


def _bracket_solve(sm: SmoothedThresholdMap, w: np.ndarray, s0: float, maxiter: int) -> np.ndarray:
    """Root of the strictly increasing scalar reduction ``r(s) = s - a' Phi_1^-1 (w - phi_1 - G(s))``."""
    a = sm.direction
    rhs = w - sm.base_intercept

    def solve_z(s):
        return np.linalg.solve(sm.base_matrix, rhs - sm.g_smooth(s))

    def r(s):
        return s - float(a @ solve_z(s))

    width = max(1.0, abs(s0), sm.sigma_a)
    for _ in range(200):
        lo, hi = s0 - width, s0 + width
        if r(lo) < 0.0 < r(hi):
            break
        width *= 2.0
    s_star = brentq(r, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=maxiter)
    return solve_z(s_star)


def invert_smooth(
    sm: SmoothedThresholdMap, w: np.ndarray, max_iter: int = 200, max_stalls: int = 50, tol: float = 1e-12, continuation_levels: int = 6
) -> np.ndarray:
    """Solve ``f_K(z) = w`` for a smoothed threshold-affine map.

    Damped Newton from the base map's piecewise inverse; after `max_stalls` step halvings, continuation
    in the bandwidth (solve at ``2**k h`` and track the root down); finally bracketing on the scalar index.

    Parameters
    ----------
    sm : SmoothedThresholdMap
        Smoothed map whose base map is certified invertible.
    w : np.ndarray
        Target of shape (p,) or batch (n, p).
    max_iter : int, default=200
        Iteration cap shared by all stages, per target.
    max_stalls : int, default=50
        Step halvings before switching to continuation.
    tol : float, default=1e-12
        Residual tolerance relative to ``1 + ||w||``.
    continuation_levels : int, default=6
        Number of bandwidth doublings used by the continuation stage.

    Returns
    -------
    np.ndarray
        The preimage, same shape as `w`.

    Raises
    ------
    NoConvergence
        If no stage reaches the tolerance within `max_iter` iterations.
    """
    w = np.asarray(w, dtype=float)
    if w.ndim == 2:
        return np.array([invert_smooth(sm, wi, max_iter, max_stalls, tol, continuation_levels) for wi in w])

    target_tol = tol * (1.0 + float(np.linalg.norm(w)))
    z0 = invert(sm.base, w)
    if sm.base.n_regimes == 1:
        return z0

    z, ok, used = _newton(sm, w, z0, target_tol, max_iter, max_stalls)
    if ok:
        return z

    logging.debug(f"invert_smooth: Newton stalled after {used} iterations, switching to bandwidth continuation")
    budget = max_iter - used
    z_cont = z0
    for level in range(continuation_levels, -1, -1):
        if budget <= 0:
            break
        sm_level = SmoothedThresholdMap(sm.base, GaussianKernelSpec(sm.bandwidth * 2.0**level))
        z_cont, ok, it = _newton(sm_level, w, z_cont, target_tol, budget, max_stalls)
        budget -= it
    if ok and level == 0:
        return z_cont

    logging.debug("invert_smooth: continuation failed, bracketing on the threshold index")
    try:
        z = _bracket_solve(sm, w, float(sm.index(z0)), maxiter=max(budget, 100))
    except (ValueError, RuntimeError) as err:
        raise NoConvergence(f"invert_smooth failed to converge within {max_iter} iterations: {err}") from err
    if np.linalg.norm(sm.evaluate(z) - w) > max(target_tol, 1e-10 * (1.0 + float(np.linalg.norm(w)))):
        raise NoConvergence(f"invert_smooth failed to reach tolerance within {max_iter} iterations")
    return z
