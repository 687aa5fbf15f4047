"""Counter-based random substreams keyed by (seed, indices)."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np


def substream(seed: int, *indices: int) -> np.random.Generator:
    """Return an independent Philox generator for the key ``(seed, *indices)``.

    The same key always yields the same stream, and distinct keys yield statistically independent
    streams, so Monte Carlo chunks and replicates can be scheduled in any order.

    Parameters
    ----------
    seed : int
        Non-negative master seed.
    *indices : int
        Non-negative stream coordinates, e.g. replicate index and chunk index.

    Returns
    -------
    np.random.Generator
        Generator backed by :class:`numpy.random.Philox`.
    """
    if seed is None or int(seed) < 0:
        raise ValueError(f"seed must be a non-negative integer. Got {seed}")
    key = [int(seed), *(int(i) for i in indices)]
    if any(k < 0 for k in key):
        raise ValueError(f"stream indices must be non-negative. Got {key}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def draw_normals(seed: int, shape: tuple[int, ...], *indices: int) -> np.ndarray:
    """Standard normal draws of the given shape from ``substream(seed, *indices)``."""
    return substream(seed, *indices).standard_normal(shape)
