"""Exact Gaussian log-likelihood of piecewise-affine SVARs and the closed-form linear VAR benchmark."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np

from pwasvar.estimation.model_spec import ModelSpec
from pwasvar.estimation.param_vector import ParamLayout, unpack
from pwasvar.exceptions import ModelValidationError
from pwasvar.model import PwaSvarModel, lag_histories
from pwasvar.pwa import PwaMap

LOG_2PI = float(np.log(2.0 * np.pi))


def log_likelihood(spec: ModelSpec, theta: np.ndarray, data: np.ndarray, exog: np.ndarray = None, layout: ParamLayout = None) -> float:
    """Conditional log-likelihood of ``data[k:]`` given the first k observations.

    Parameters
    ----------
    spec : ModelSpec
        Model structure.
    theta : np.ndarray
        Flat parameter vector.
    data : np.ndarray
        Observations of shape (T, p) with ``T > k``.
    exog : np.ndarray, optional
        Dummy series for the dummy skedastic variant.
    layout : ParamLayout, optional
        Precomputed layout of `spec`.

    Returns
    -------
    float
        The log-likelihood, or ``-inf`` where ``f0`` fails the determinant condition.

    Examples
    --------
    >>> spec = ModelSpec(p=1, k=1, n_regimes=1)
    >>> log_likelihood(spec, np.array([1.0, 0.0, 0.0]), np.zeros((11, 1)))  # doctest: +ELLIPSIS
    -9.189...
    """
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)):
        return -np.inf
    try:
        model = unpack(spec, theta, layout)
    except ModelValidationError:
        return -np.inf
    value = float(np.sum(model.log_density_series(data, exog)))
    return value if np.isfinite(value) else -np.inf


@dataclass(frozen=True)
class LinearVarFit:
    """Closed-form Gaussian ML estimate of a linear VAR ``z_t = b + sum_i A_i z_(t-i) + u_t``.

    Attributes
    ----------
    const : np.ndarray
        ``b``, shape (p,).
    coefs : np.ndarray
        ``A_1..A_k``, shape (k, p, p).
    sigma : np.ndarray
        ML residual covariance ``U'U / n``.
    phi0 : np.ndarray
        Lower-triangular structural impact matrix ``chol(sigma)^-1``.
    log_likelihood : float
        Maximized conditional log-likelihood.
    residuals : np.ndarray
        Reduced-form residuals, shape (T-k, p).
    """

    const: np.ndarray
    coefs: np.ndarray
    sigma: np.ndarray
    phi0: np.ndarray
    log_likelihood: float
    residuals: np.ndarray

    def structural(self) -> tuple[np.ndarray, list[np.ndarray], np.ndarray]:
        """Structural form ``(Phi0, [Phi0 A_i], Phi0 b)``."""
        return self.phi0, [self.phi0 @ a for a in self.coefs], self.phi0 @ self.const

    def to_model(self, spec: ModelSpec) -> PwaSvarModel:
        """The structural linear VAR written on the partition of `spec` (identical regimes)."""
        phi0, lag_mats, c = self.structural()
        part = spec.partition()
        L = part.n_regimes
        zeros = np.zeros((L, spec.p))
        f0 = PwaMap(part, zeros, np.repeat(phi0[None], L, axis=0))
        lags = [PwaMap(part, zeros, np.repeat(m[None], L, axis=0)) for m in lag_mats]
        model = PwaSvarModel(f0, lags, c)
        if spec.normalization == "fixed_q":
            model = model.rotated(np.array(spec.fixed_q).T)
        return model


def linear_var_ml(data: np.ndarray, k: int) -> LinearVarFit:
    """Least-squares (= Gaussian ML) fit of a linear VAR(k) with constant, conditioning on the first k observations."""
    data = np.asarray(data, dtype=float)
    hist = lag_histories(data, k)
    n, p = hist.shape[0], data.shape[1]
    # Regressors ordered [1, z_(t-1), ..., z_(t-k)].
    X = np.hstack([np.ones((n, 1))] + [hist[:, -i, :] for i in range(1, k + 1)])
    Y = data[k:]
    B, *_ = np.linalg.lstsq(X, Y, rcond=None)
    U = Y - X @ B
    sigma = U.T @ U / n
    chol = np.linalg.cholesky(sigma)
    phi0 = np.linalg.inv(chol)
    coefs = np.stack([B[1 + (i - 1) * p : 1 + i * p].T for i in range(1, k + 1)])
    logl = -0.5 * n * (p * LOG_2PI + np.linalg.slogdet(sigma)[1] + p)
    return LinearVarFit(const=B[0], coefs=coefs, sigma=sigma, phi0=phi0, log_likelihood=float(logl), residuals=U)
