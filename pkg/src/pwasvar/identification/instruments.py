"""Recovery of one structural shock from an external instrument."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from dataclasses import dataclass

import numpy as np

from pwasvar.exceptions import WeakInstrument

MIN_INSTRUMENT_OBS = 30


@dataclass(frozen=True)
class InstrumentResult:
    """Output of :func:`instrument_q1`.

    Attributes
    ----------
    q1 : np.ndarray
        Unit vector, the first column of the rotation.
    shocks : np.ndarray
        Recovered shock series ``q1' u_t``.
    delta : np.ndarray
        Sample covariance of the residuals with the instrument.
    strength : float
        ``||delta||`` over its jackknife standard error.
    """

    q1: np.ndarray
    shocks: np.ndarray
    delta: np.ndarray
    strength: float

    def to_dict(self) -> dict:
        return {"q1": self.q1.tolist(), "delta": self.delta.tolist(), "strength": self.strength}


def instrument_q1(u: np.ndarray, w: np.ndarray, min_strength: float = 3.0) -> InstrumentResult:
    """Direction of the shock correlated with instrument `w`: ``q1 = delta / ||delta||``.

    Parameters
    ----------
    u : np.ndarray
        Orthogonal reduced-form residuals, shape (T, p).
    w : np.ndarray
        Instrument series, shape (T,).
    min_strength : float, default=3.0
        Minimum ratio of ``||delta||`` to its jackknife standard error.

    Returns
    -------
    InstrumentResult
        `q1` with its sign chosen so that the recovered shock covaries positively with `w`.

    Raises
    ------
    WeakInstrument
        If the strength ratio is below `min_strength`.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float).ravel()
    if u.ndim != 2 or u.shape[0] != w.size:
        raise ValueError(f"u must have shape (T, p) with T = len(w) = {w.size}. Got {u.shape}")
    n = w.size
    if n < MIN_INSTRUMENT_OBS:
        raise ValueError(f"Need at least {MIN_INSTRUMENT_OBS} observations. Got {n}")

    uc = u - u.mean(axis=0)
    wc = w - w.mean()
    prods = uc * wc[:, None]
    delta = prods.mean(axis=0)
    norm = float(np.linalg.norm(delta))

    # Leave-one-out covariances and the jackknife standard error of the norm.
    loo = (n * delta[None, :] - prods) / (n - 1)
    loo_norms = np.linalg.norm(loo, axis=1)
    se = float(np.sqrt((n - 1) / n * np.sum((loo_norms - loo_norms.mean()) ** 2)))
    strength = norm / se if se > 0 else (np.inf if norm > 0 else 0.0)
    if not norm > 0 or strength < min_strength:
        raise WeakInstrument(strength, f"Instrument too weak: ||delta|| / se = {strength:.3f} < {min_strength}")

    q1 = delta / norm
    shocks = u @ q1
    if np.mean((shocks - shocks.mean()) * wc) < 0:
        q1, shocks = -q1, -shocks
    logging.info(f"instrument_q1: strength {strength:.2f}, q1 = {np.round(q1, 4).tolist()}")
    return InstrumentResult(q1=q1, shocks=shocks, delta=delta, strength=float(strength))
