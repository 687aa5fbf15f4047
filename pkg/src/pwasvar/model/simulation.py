"""Path simulation of piecewise-affine SVARs."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from pwasvar.exceptions import HistoryLengthMismatch
from pwasvar.model.svar_model import PwaSvarModel
from pwasvar.random import substream


@dataclass(frozen=True)
class SimulationResult:
    """Simulated path of a piecewise-affine SVAR.

    Attributes
    ----------
    path : np.ndarray
        ``z_1, ..., z_T``, shape (T, p).
    regimes : np.ndarray
        Regime label of each ``z_t``.
    shocks : np.ndarray
        Structural shocks ``eps_t`` actually applied (after `shock_scale`), shape (T, p).
    seed : int
        Master seed.
    replicate : int
        Substream index under `seed`.
    initial_history : np.ndarray
        The k pre-sample observations, chronological.
    """

    path: np.ndarray
    regimes: np.ndarray
    shocks: np.ndarray
    seed: int
    replicate: int
    initial_history: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        """Tabular export with columns ``t, z_1..z_p, regime, eps_1..eps_p``."""
        T, p = self.path.shape
        data = {"t": np.arange(1, T + 1)}
        data.update({f"z_{i + 1}": self.path[:, i] for i in range(p)})
        data["regime"] = self.regimes
        data.update({f"eps_{i + 1}": self.shocks[:, i] for i in range(p)})
        return pd.DataFrame(data)

    def data_with_presample(self) -> np.ndarray:
        """Initial history followed by the path, shape (k + T, p)."""
        return np.vstack([self.initial_history, self.path])


def simulate(
    model: PwaSvarModel,
    initial_history: np.ndarray,
    T: int,
    seed: int = 42,
    shock_scale: float = 1.0,
    exog: np.ndarray = None,
    replicate: int = 0,
) -> SimulationResult:
    """Simulate ``T`` periods by iterating the structural solve with iid standard-normal shocks.

    Parameters
    ----------
    model : PwaSvarModel
        Certified model.
    initial_history : np.ndarray
        Pre-sample observations of shape (k, p), chronological.
    T : int
        Number of periods, at least 1.
    seed : int, default=42
        Master seed; shocks come from the Philox substream ``(seed, replicate)``.
    shock_scale : float, default=1.0
        Multiplier on the draws; 0 gives the deterministic skeleton.
    exog : np.ndarray, optional
        Dummy series of length T for the dummy skedastic variant.
    replicate : int, default=0
        Replicate index.

    Returns
    -------
    SimulationResult
    """
    if not isinstance(T, (int, np.integer)) or T < 1:
        raise ValueError(f"T must be a positive integer. Got {T}")
    history = np.array(initial_history, dtype=float)
    if history.shape != (model.k, model.p):
        raise HistoryLengthMismatch(f"initial_history must have shape ({model.k}, {model.p}). Got {history.shape}")
    if exog is not None and len(exog) != T:
        raise ValueError(f"exog must have length T={T}. Got {len(exog)}")

    eps = shock_scale * substream(seed, replicate).standard_normal((T, model.p))
    path = np.empty((T, model.p))
    regimes = np.empty(T, dtype=int)
    window = history.copy()

    for t in range(T):
        v = None if exog is None else exog[t]
        z, label = model.solve_step(window, eps[t], v)
        path[t] = z
        regimes[t] = label
        window = np.vstack([window[1:], z])

    return SimulationResult(path=path, regimes=regimes, shocks=eps, seed=seed, replicate=replicate, initial_history=history)


def simulate_replicates(
    model: PwaSvarModel, initial_history: np.ndarray, T: int, n_replicates: int, seed: int = 42, n_jobs: int = 1, **kwargs
) -> list[SimulationResult]:
    """Simulate `n_replicates` independent paths on disjoint substreams ``(seed, r)``; results do not depend on `n_jobs`."""
    return Parallel(n_jobs=n_jobs)(
        delayed(simulate)(model, initial_history, T, seed=seed, replicate=r, **kwargs) for r in range(n_replicates)
    )
