"""Diagonal skedastic functions: conditional shock standard deviations driven by a lagged regime or an exogenous dummy."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from typing import Any

import numpy as np

from pwasvar.exceptions import ModelValidationError, SkedasticNotDiagonalizable

VARIANTS = ("homoskedastic", "regime", "dummy")


def _level_key(v: Any) -> Any:
    """Canonical dictionary key for a dummy level (integral floats become ints)."""
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return int(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


class SkedasticSpec:
    """Diagonal conditional standard deviation ``sigma(.)`` of the structural shocks.

    Parameters
    ----------
    p : int
        Number of shocks.
    variant : str, default="homoskedastic"
        ``"homoskedastic"`` (``sigma = I``), ``"regime"`` (keyed by the regime of ``z_(t-lag)``) or
        ``"dummy"`` (keyed by the level of an exogenous series ``v_t``).
    sd : dict, optional
        Map from regime label or dummy level to a length-`p` vector of positive standard deviations.
    reference : Any, optional
        Key at which ``sigma = I``; its `sd` entry must be all ones.
    lag : int, default=1
        Lag whose regime selects the variances (``"regime"`` variant only).

    Examples
    --------
    >>> sk = SkedasticSpec.regime(2, {1: [1.0, 1.0], 2: [1.0, 2.0]}, reference=1)
    >>> sk.variances()
    {1: array([1., 1.]), 2: array([1., 4.])}
    """

    def __init__(self, p: int, variant: str = "homoskedastic", sd: dict = None, reference: Any = None, lag: int = 1):
        if not isinstance(p, (int, np.integer)) or p < 1:
            raise ModelValidationError(f"p must be a positive integer. Got {p}")
        if variant not in VARIANTS:
            raise ModelValidationError(f"variant must be one of {VARIANTS}. Got {variant!r}")

        self.p: int = int(p)
        self.variant: str = variant
        self.lag: int = int(lag)
        self.reference: Any = None
        self.sd: dict = {}

        if variant == "homoskedastic":
            return

        if not sd:
            raise ModelValidationError(f"The {variant!r} skedastic variant needs at least one sd entry.")
        if variant == "regime" and self.lag < 1:
            raise ModelValidationError(f"lag must be >= 1. Got {lag}")

        for key, vec in sd.items():
            arr = np.array(vec, dtype=float).ravel()
            if arr.shape != (self.p,):
                raise ModelValidationError(f"sd[{key!r}] must have length {self.p}. Got {arr.size}")
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise ModelValidationError(f"sd[{key!r}] entries must be positive. Got {arr.tolist()}")
            arr.setflags(write=False)
            self.sd[_level_key(key)] = arr

        ref = _level_key(reference)
        if ref not in self.sd:
            raise ModelValidationError(f"reference {reference!r} must be one of the sd keys {list(self.sd)}")
        if not np.array_equal(self.sd[ref], np.ones(self.p)):
            raise ModelValidationError(f"sigma must equal I at the reference {reference!r}. Got {self.sd[ref].tolist()}")
        self.reference = ref

    @classmethod
    def homoskedastic(cls, p: int) -> "SkedasticSpec":
        """``sigma = I`` everywhere."""
        return cls(p)

    @classmethod
    def regime(cls, p: int, sd: dict, reference: int = 1, lag: int = 1) -> "SkedasticSpec":
        """Standard deviations keyed by the regime label of ``z_(t-lag)``."""
        return cls(p, "regime", sd, reference, lag)

    @classmethod
    def dummy(cls, p: int, sd: dict, reference: Any = 0) -> "SkedasticSpec":
        """Standard deviations keyed by the level of an exogenous dummy ``v_t``."""
        return cls(p, "dummy", sd, reference)

    @property
    def is_homoskedastic(self) -> bool:
        return self.variant == "homoskedastic"

    def keys(self) -> list:
        """Keys of the non-reference levels, in insertion order."""
        return [key for key in self.sd if key != self.reference]

    def sigma_diag(self, history: np.ndarray = None, v: Any = None, partition: Any = None) -> np.ndarray:
        """Diagonal of ``sigma`` for one period or a batch.

        Parameters
        ----------
        history : np.ndarray, optional
            Chronological lag history of shape (k, p) or batch (n, k, p); the last row is ``z_(t-1)``.
        v : Any, optional
            Dummy level (scalar) or batch of levels of shape (n,).
        partition : ThresholdPartition | ConicPartition, optional
            Regime partition used by the ``"regime"`` variant.

        Returns
        -------
        np.ndarray
            Shape (p,) or (n, p).
        """
        if self.variant == "homoskedastic":
            if history is not None and np.ndim(history) == 3:
                return np.ones((np.shape(history)[0], self.p))
            if v is not None and np.ndim(v) == 1:
                return np.ones((len(v), self.p))
            return np.ones(self.p)

        if self.variant == "regime":
            if history is None or partition is None:
                raise ValueError("The regime skedastic variant needs the lag history and the partition.")
            history = np.asarray(history, dtype=float)
            if history.shape[-2] < self.lag:
                raise ModelValidationError(f"History holds {history.shape[-2]} lags; skedastic lag is {self.lag}")
            labels = partition.regime_of(history[..., -self.lag, :])
            return self._lookup(labels)

        if v is None:
            raise ValueError("The dummy skedastic variant needs the exogenous series v.")
        return self._lookup(v)

    def _lookup(self, keys: Any) -> np.ndarray:
        if np.ndim(keys) == 0:
            key = _level_key(keys.item() if hasattr(keys, "item") else keys)
            if key not in self.sd:
                raise ValueError(f"No skedastic level {key!r}; known levels {list(self.sd)}")
            return np.array(self.sd[key])
        return np.array([self._lookup(k) for k in np.asarray(keys).ravel()])

    def variances(self) -> dict:
        """Map from every key to the diagonal of ``sigma^2`` (``{None: ones}`` when homoskedastic)."""
        if self.is_homoskedastic:
            return {None: np.ones(self.p)}
        return {key: vec**2 for key, vec in self.sd.items()}

    def evaluations(self) -> list[np.ndarray]:
        """Diagonals of ``sigma^2`` at every level, for identification diagnostics."""
        return list(self.variances().values())

    def rotated(self, Q: np.ndarray, tol: float = 1e-8) -> "SkedasticSpec":
        """Conjugate the variances by `Q`; the result must stay diagonal at every level.

        Raises
        ------
        SkedasticNotDiagonalizable
            If some ``Q sigma^2 Q'`` has off-diagonal entries above ``tol * max diagonal``.
        """
        if self.is_homoskedastic:
            return self
        Q = np.asarray(Q, dtype=float)
        new_sd = {}
        for key, var in self.variances().items():
            rot = Q @ np.diag(var) @ Q.T
            off = np.abs(rot - np.diag(np.diag(rot)))
            if np.max(off) > tol * np.max(np.diag(rot)):
                raise SkedasticNotDiagonalizable(f"Q sigma^2 Q' is not diagonal at level {key!r}: max off-diagonal {np.max(off):.3e}")
            new_sd[key] = np.sqrt(np.diag(rot))
        new_sd[self.reference] = np.ones(self.p)
        return SkedasticSpec(self.p, self.variant, new_sd, self.reference, self.lag)

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        if self.is_homoskedastic:
            return {"type": "homoskedastic"}
        out = {"type": self.variant, "reference": self.reference, "sd": {str(k): v.tolist() for k, v in self.sd.items()}}
        if self.variant == "regime":
            out["lag"] = self.lag
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkedasticSpec):
            return NotImplemented
        return (
            self.p == other.p
            and self.variant == other.variant
            and self.lag == other.lag
            and self.reference == other.reference
            and self.sd.keys() == other.sd.keys()
            and all(np.array_equal(self.sd[k], other.sd[k]) for k in self.sd)
        )

    def __repr__(self) -> str:
        return f"SkedasticSpec(p={self.p}, variant={self.variant!r}, levels={list(self.sd)})"
