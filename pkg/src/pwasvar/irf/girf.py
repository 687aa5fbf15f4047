"""State-dependent generalized impulse responses by Monte Carlo with common random numbers."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from pwasvar.model import PwaSvarModel
from pwasvar.random import substream


@dataclass(frozen=True)
class GirfResult:
    """Mean response of the shocked path over the baseline path, per horizon.

    Attributes
    ----------
    response : np.ndarray
        Shape (H+1, p); row h is ``E[z_(t+h) | history, shock] - E[z_(t+h) | history]``.
    mc_se : np.ndarray
        Monte Carlo standard errors of `response`.
    shock_index : int
        Shocked structural equation.
    size : float
        Shock size in structural standard deviations.
    draws : int
        Number of shock paths.
    seed : int
        Seed of the shock paths.
    history : np.ndarray
        Initial history of shape (k, p).
    zero_future_shocks : bool
        Whether shocks after impact were set to zero.
    occupancy_baseline, occupancy_shocked : np.ndarray
        Shape (H+1, L); share of paths in each regime per horizon.
    variables : tuple[str, ...]
        Variable names.
    """

    response: np.ndarray
    mc_se: np.ndarray
    shock_index: int
    size: float
    draws: int
    seed: int
    history: np.ndarray
    zero_future_shocks: bool
    occupancy_baseline: np.ndarray
    occupancy_shocked: np.ndarray
    variables: tuple = field(default=())

    @property
    def horizon(self) -> int:
        return self.response.shape[0] - 1

    @property
    def horizons(self) -> np.ndarray:
        return np.arange(self.horizon + 1)

    def to_frame(self) -> pd.DataFrame:
        """Long table with columns h, variable, mean, mc_se."""
        names = self.variables or tuple(f"z{i + 1}" for i in range(self.response.shape[1]))
        rows = [
            {"h": h, "variable": name, "mean": self.response[h, i], "mc_se": self.mc_se[h, i]}
            for h in self.horizons
            for i, name in enumerate(names)
        ]
        return pd.DataFrame(rows, columns=["h", "variable", "mean", "mc_se"])

    def multiplier_curve(self, target: int, driver: int) -> pd.DataFrame:
        """Cumulative multiplier of variable `target` over variable `driver` at every horizon."""
        from pwasvar.irf.phillips import cumulative_multiplier

        values = [cumulative_multiplier(self.response[:, target], self.response[:, driver], h) for h in self.horizons]
        return pd.DataFrame({"h": self.horizons, "multiplier": values})

    def to_dict(self) -> dict:
        return {
            "shock_index": self.shock_index,
            "size": self.size,
            "draws": self.draws,
            "seed": self.seed,
            "zero_future_shocks": self.zero_future_shocks,
            "history": self.history.tolist(),
            "response": self.response.tolist(),
            "mc_se": self.mc_se.tolist(),
            "occupancy_baseline": self.occupancy_baseline.tolist(),
            "occupancy_shocked": self.occupancy_shocked.tolist(),
        }


def _girf_chunk(
    model: PwaSvarModel,
    history: np.ndarray,
    shock_index: int,
    size: float,
    horizon: int,
    n: int,
    seed: int,
    chunk: int,
    zero_future_shocks: bool,
    v: Any,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Simulate `n` baseline/shocked path pairs; returns the differences and the regime counts."""
    p, L = model.p, model.n_regimes
    eps = substream(seed, chunk).standard_normal((horizon + 1, n, p))
    if zero_future_shocks:
        eps[1:] = 0.0

    base = np.broadcast_to(history, (n,) + history.shape).copy()
    shocked = base.copy()
    diffs = np.empty((n, horizon + 1, p))
    occ_base = np.zeros((horizon + 1, L))
    occ_shock = np.zeros((horizon + 1, L))
    vs = None if v is None else np.full(n, v)

    for h in range(horizon + 1):
        e_shocked = eps[h].copy()
        if h == 0:
            e_shocked[:, shock_index] += size
        z_b, lab_b = model.solve_step(base, eps[h], vs)
        z_s, lab_s = model.solve_step(shocked, e_shocked, vs)
        diffs[:, h, :] = z_s - z_b
        occ_base[h] = np.bincount(np.asarray(lab_b) - 1, minlength=L)
        occ_shock[h] = np.bincount(np.asarray(lab_s) - 1, minlength=L)
        base = np.concatenate([base[:, 1:, :], z_b[:, None, :]], axis=1)
        shocked = np.concatenate([shocked[:, 1:, :], z_s[:, None, :]], axis=1)
    return diffs, occ_base, occ_shock


def girf(
    model: PwaSvarModel,
    history: np.ndarray,
    shock_index: int,
    size: float = 1.0,
    horizon: int = 20,
    draws: int = 1000,
    seed: int = 42,
    zero_future_shocks: bool = False,
    chunk_size: int = 10000,
    n_jobs: int = 1,
    exog: Any = None,
    variables: tuple = (),
) -> GirfResult:
    """Generalized impulse response of a structural shock from a given history.

    Every draw simulates a baseline path and a shocked path from the same shock sequence; the shocked
    path adds `size` to shock `shock_index` at impact. Draws are split into fixed chunks, each on its
    own random substream, so the result depends on the seed and chunk size only, not on `n_jobs`.

    Parameters
    ----------
    model : PwaSvarModel
        Certified model.
    history : np.ndarray
        Chronological history of shape (k, p); the last row is the most recent observation.
    shock_index : int
        Zero-based index of the shocked equation.
    size : float, default=1.0
        Shock size in structural standard deviations.
    horizon : int, default=20
        Last horizon H.
    draws : int, default=1000
        Number of shock paths R.
    seed : int, default=42
        Seed of the shock paths.
    zero_future_shocks : bool, default=False
        Set all shocks after impact to zero instead of averaging over them.
    chunk_size : int, default=10000
        Paths per substream chunk.
    n_jobs : int, default=1
        joblib workers.
    exog : Any, optional
        Constant dummy level for the dummy skedastic variant.
    variables : tuple[str, ...], optional
        Variable names for :meth:`GirfResult.to_frame`.

    Returns
    -------
    GirfResult
    """
    history = np.asarray(history, dtype=float)
    if history.shape != (model.k, model.p):
        raise ValueError(f"history must have shape ({model.k}, {model.p}). Got {history.shape}")
    if not 0 <= shock_index < model.p:
        raise ValueError(f"shock_index must be in 0..{model.p - 1}. Got {shock_index}")
    if draws < 1:
        raise ValueError(f"draws must be at least 1. Got {draws}")
    if horizon < 0:
        raise ValueError(f"horizon must be non-negative. Got {horizon}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive. Got {chunk_size}")

    sizes = [min(chunk_size, draws - start) for start in range(0, draws, chunk_size)]
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_girf_chunk)(model, history, shock_index, size, horizon, n, seed, c, zero_future_shocks, exog)
        for c, n in enumerate(sizes)
    )

    diffs = np.concatenate([d for d, _, _ in parts], axis=0)
    occ_base = sum(o for _, o, _ in parts) / draws
    occ_shock = sum(o for _, _, o in parts) / draws
    response = diffs.mean(axis=0)
    mc_se = diffs.std(axis=0, ddof=1) / np.sqrt(draws) if draws > 1 else np.full_like(response, np.nan)

    logging.info(f"girf: shock {shock_index}, size {size}, {draws} draws, impact response {np.round(response[0], 6).tolist()}")
    return GirfResult(
        response=response,
        mc_se=mc_se,
        shock_index=int(shock_index),
        size=float(size),
        draws=int(draws),
        seed=int(seed),
        history=history.copy(),
        zero_future_shocks=bool(zero_future_shocks),
        occupancy_baseline=occ_base,
        occupancy_shocked=occ_shock,
        variables=tuple(variables),
    )
