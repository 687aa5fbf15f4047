"""Maximum-likelihood estimation of threshold piecewise-affine SVARs."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize_scalar
from statsmodels.tools.numdiff import approx_fprime, approx_hess3

from pwasvar.algorithms import multistart_optimize
from pwasvar.decorators import get_short_name
from pwasvar.estimation.likelihood import log_likelihood, linear_var_ml
from pwasvar.estimation.model_spec import ModelSpec
from pwasvar.estimation.param_vector import ParamLayout, param_layout, pack, unpack, normalize_signs
from pwasvar.exceptions import AllStartsFailed
from pwasvar.model import PwaSvarModel
from pwasvar.problems import LikelihoodProblem
from pwasvar.pwa import InvertibilityCertificate
from pwasvar.random import substream


@dataclass(frozen=True)
class EstimationOptions:
    """Settings of :func:`estimate_ml`.

    Parameters
    ----------
    restarts : int, default=4
        Perturbed starts in addition to the linear-VAR start.
    seed : int, default=42
        Seed of the start perturbations.
    max_iters : int, default=5000
        Iteration cap of each local method.
    tolerance : float, default=1e-8
        Simplex tolerance.
    perturbation_scale : float, default=0.1
        Relative standard deviation of the start perturbations.
    n_jobs : int, default=1
        joblib workers for the starts.
    threshold_grid : int, default=15
        Grid size of the threshold profile search.
    threshold_trim : float, default=0.15
        Fraction of the threshold variable trimmed from each tail of the profile grid.
    compute_covariance : bool, default=True
        Whether to compute the numerical-Hessian covariance.
    """

    restarts: int = 4
    seed: int = 42
    max_iters: int = 5000
    tolerance: float = 1e-8
    perturbation_scale: float = 0.1
    n_jobs: int = 1
    threshold_grid: int = 15
    threshold_trim: float = 0.15
    compute_covariance: bool = True

    def __post_init__(self):
        if not isinstance(self.restarts, int) or self.restarts < 0:
            raise ValueError(f"restarts must be a non-negative integer. Got {self.restarts}")
        if not isinstance(self.max_iters, int) or self.max_iters < 1:
            raise ValueError(f"max_iters must be a positive integer. Got {self.max_iters}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive. Got {self.tolerance}")
        if self.perturbation_scale < 0:
            raise ValueError(f"perturbation_scale must be non-negative. Got {self.perturbation_scale}")
        if self.threshold_grid < 3:
            raise ValueError(f"threshold_grid must be at least 3. Got {self.threshold_grid}")
        if not 0.0 <= self.threshold_trim < 0.5:
            raise ValueError(f"threshold_trim must be in [0, 0.5). Got {self.threshold_trim}")


@dataclass(frozen=True)
class EstimationResult:
    """Outcome of :func:`estimate_ml`.

    Attributes
    ----------
    spec : ModelSpec
        Estimated structure.
    params : np.ndarray
        Estimated parameter vector.
    model : PwaSvarModel
        Unpacked model at `params`.
    log_likelihood : float
        Maximized log-likelihood; re-evaluating `params` reproduces it.
    converged : bool
        Whether the winning start reported convergence.
    n_restarts : int
        Number of starts run.
    certificate : InvertibilityCertificate
        Certificate of ``f0`` at the optimum.
    covariance : np.ndarray | None
        Inverse of the negative numerical Hessian (NaN rows for a profiled threshold).
    gradient_norm : float
        Norm of the numerical gradient at the optimum.
    seed : int
        Seed of the start perturbations.
    n_obs : int
        Number of likelihood contributions.
    restart_log : list[dict]
        Per-start records.
    algorithm : str
        Short name of the optimizer.
    """

    spec: ModelSpec
    params: np.ndarray
    model: PwaSvarModel
    log_likelihood: float
    converged: bool
    n_restarts: int
    certificate: InvertibilityCertificate
    covariance: np.ndarray | None
    gradient_norm: float
    seed: int
    n_obs: int
    restart_log: list = field(default_factory=list, repr=False)
    algorithm: str = "nm_bfgs"

    @property
    def free_parameter_count(self) -> int:
        return int(self.params.size)

    @property
    def std_errors(self) -> np.ndarray | None:
        if self.covariance is None:
            return None
        with np.errstate(invalid="ignore"):
            return np.sqrt(np.diag(self.covariance))

    @property
    def param_names(self) -> list[str]:
        return param_layout(self.spec).names

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary."""
        se = self.std_errors
        return {
            "spec": self.spec.to_dict(),
            "log_likelihood": self.log_likelihood,
            "converged": self.converged,
            "n_restarts": self.n_restarts,
            "n_obs": self.n_obs,
            "seed": self.seed,
            "gradient_norm": self.gradient_norm,
            "algorithm": self.algorithm,
            "certificate": self.certificate.to_dict(),
            "parameters": [
                {"name": name, "estimate": float(v), "std_error": None if se is None or not np.isfinite(se[i]) else float(se[i])}
                for i, (name, v) in enumerate(zip(self.param_names, self.params))
            ],
        }


def numerical_covariance(fn: Any, theta: np.ndarray, skip: list[int] = ()) -> np.ndarray | None:
    """Inverse negative Hessian of `fn` at `theta`, excluding the positions in `skip` (left as NaN)."""
    keep = np.array([i for i in range(theta.size) if i not in set(skip)], dtype=int)
    if keep.size == 0:
        return None

    def sub(x):
        full = theta.copy()
        full[keep] = x
        return fn(full)

    hess = approx_hess3(theta[keep], sub)
    if not np.all(np.isfinite(hess)):
        return None
    try:
        inv = np.linalg.inv(-hess)
    except np.linalg.LinAlgError:
        inv = np.linalg.pinv(-hess)
    cov = np.full((theta.size, theta.size), np.nan)
    cov[np.ix_(keep, keep)] = 0.5 * (inv + inv.T)
    return cov


def _starting_values(spec: ModelSpec, layout: ParamLayout, data: np.ndarray, options: EstimationOptions, extra: list) -> list:
    base = pack(spec, linear_var_ml(data, spec.k).to_model(spec), layout)
    if layout.threshold_index is not None:
        base[layout.threshold_index] = spec.thresholds[0]
    starts = [base]
    for r in range(1, options.restarts + 1):
        noise = substream(options.seed, r).standard_normal(base.size)
        start = base + options.perturbation_scale * noise * (np.abs(base) + 0.1)
        if layout.threshold_index is not None:
            start[layout.threshold_index] = base[layout.threshold_index]
        starts.append(start)
    for theta in extra:
        starts.append(np.asarray(theta, dtype=float))
    return starts


def _fit_fixed_threshold(spec: ModelSpec, data: np.ndarray, exog: np.ndarray, options: EstimationOptions, extra: list) -> tuple:
    layout = param_layout(spec)
    problem = LikelihoodProblem(layout.size, lambda th: log_likelihood(spec, th, data, exog, layout))
    starts = _starting_values(spec, layout, data, options, extra)
    best, best_fit, records = multistart_optimize(problem, starts, options.max_iters, options.tolerance, options.n_jobs)
    return best, best_fit, records, layout


def estimate_ml(
    spec: ModelSpec, data: np.ndarray, options: EstimationOptions = None, exog: np.ndarray = None, extra_starts: list = None
) -> EstimationResult:
    """Maximize the exact conditional likelihood over the parameter vector of `spec`.

    Starts are the closed-form linear-VAR estimate written on both regimes, `options.restarts` Gaussian
    perturbations of it, and any `extra_starts`. A free threshold is profiled over a trimmed quantile grid
    of the threshold variable, then refined by golden-section search.

    Parameters
    ----------
    spec : ModelSpec
        Model structure.
    data : np.ndarray
        Observations of shape (T, p).
    options : EstimationOptions, optional
        Optimizer settings.
    exog : np.ndarray, optional
        Dummy series for the dummy skedastic variant.
    extra_starts : list[np.ndarray], optional
        Additional starting vectors in the layout of `spec`.

    Returns
    -------
    EstimationResult

    Raises
    ------
    ValueError
        If the sample is too short for the number of free parameters.
    AllStartsFailed
        If every start ends at an infeasible point.
    """
    options = options or EstimationOptions()
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] != spec.p:
        raise ValueError(f"data must have shape (T, {spec.p}). Got {data.shape}")
    layout = param_layout(spec)
    if data.shape[0] <= spec.k + layout.size:
        raise ValueError(f"Need more than k + {layout.size} = {spec.k + layout.size} observations. Got {data.shape[0]}")

    extra = list(extra_starts or [])

    if spec.free_threshold:
        theta, fitness, records = _profile_threshold(spec, data, exog, options, extra, layout)
        skip = [layout.threshold_index]
    else:
        theta, fitness, records, _ = _fit_fixed_threshold(spec, data, exog, options, extra)
        skip = []

    if not np.isfinite(fitness):
        raise AllStartsFailed(f"All {len(records)} starts ended at infeasible parameter points")

    theta = normalize_signs(spec, theta, layout)
    logl = log_likelihood(spec, theta, data, exog, layout)
    model = unpack(spec, theta, layout)

    def fn(th):
        return log_likelihood(spec, th, data, exog, layout)

    keep = [i for i in range(theta.size) if i not in skip]
    with np.errstate(all="ignore"):
        grad = approx_fprime(theta[keep], lambda x: fn(_with(theta, keep, x)), centered=True)
    gradient_norm = float(np.linalg.norm(grad)) if np.all(np.isfinite(grad)) else float("inf")
    covariance = None
    if options.compute_covariance:
        with np.errstate(all="ignore"):
            covariance = numerical_covariance(fn, theta, skip)

    winner = max(records, key=lambda r: (r["fitness"], -r["restart"]))
    logging.info(f"estimate_ml: log-likelihood {logl:.6f}, gradient norm {gradient_norm:.3e}, {len(records)} starts")
    return EstimationResult(
        spec=spec,
        params=theta,
        model=model,
        log_likelihood=logl,
        converged=bool(winner["converged"]),
        n_restarts=len(records),
        certificate=model.certificate,
        covariance=covariance,
        gradient_norm=gradient_norm,
        seed=options.seed,
        n_obs=data.shape[0] - spec.k,
        restart_log=records,
        algorithm=get_short_name(multistart_optimize),
    )


def _with(theta: np.ndarray, positions: list, values: np.ndarray) -> np.ndarray:
    full = theta.copy()
    full[positions] = values
    return full


def _profile_threshold(spec: ModelSpec, data: np.ndarray, exog: np.ndarray, options: EstimationOptions, extra: list, layout: ParamLayout):
    """Profile the likelihood over the threshold; returns the full vector, its fitness and the winning start log."""
    x = np.sort(data[spec.k :, spec.threshold_index])
    grid = np.unique(np.quantile(x, np.linspace(options.threshold_trim, 1.0 - options.threshold_trim, options.threshold_grid)))
    fits = {}

    def profile(tau: float) -> float:
        key = float(tau)
        if key not in fits:
            fixed = spec.with_thresholds((key,), free=False)
            theta, fitness, records, _ = _fit_fixed_threshold(fixed, data, exog, options, [])
            fits[key] = (theta, fitness, records)
            logging.info(f"Threshold profile: tau={key:.6f}, log-likelihood {fitness:.6f}")
        return fits[key][1]

    values = np.array([profile(t) for t in grid])
    if not np.any(np.isfinite(values)):
        return np.zeros(layout.size), -np.inf, [r for f in fits.values() for r in f[2]]

    best = int(np.argmax(values))
    if 0 < best < grid.size - 1:
        tau_star = float(grid[best])
        try:
            res = minimize_scalar(
                lambda t: -profile(t) if grid[best - 1] < t < grid[best + 1] else np.inf,
                bracket=(grid[best - 1], grid[best], grid[best + 1]),
                method="golden",
                tol=1e-4,
            )
            if np.isfinite(res.fun) and -res.fun >= values[best]:
                tau_star = float(res.x)
        except ValueError as err:
            logging.debug(f"Golden-section refinement of the threshold skipped: {err}")
    else:
        tau_star = float(grid[best])

    profile(tau_star)
    theta_fixed, fitness, records = fits[tau_star]
    fixed_spec = spec.with_thresholds((tau_star,), free=False)
    fixed_model = unpack(fixed_spec, theta_fixed)
    theta = pack(spec, fixed_model, layout)
    theta[layout.threshold_index] = tau_star
    for start in extra:
        fitness_extra = log_likelihood(spec, start, data, exog, layout)
        if fitness_extra > fitness:
            theta, fitness = np.asarray(start, dtype=float), fitness_extra
    return theta, fitness, records
