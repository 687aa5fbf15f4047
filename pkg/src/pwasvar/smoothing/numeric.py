"""Numerical Gaussian smoothing of piecewise-affine maps: split Gauss-Legendre, tensor Gauss-Hermite and Monte Carlo."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
from joblib import Parallel, delayed
from numpy.polynomial.hermite import hermgauss
from numpy.polynomial.legendre import leggauss
from scipy.stats import norm

from pwasvar.exceptions import DimensionTooLarge
from pwasvar.pwa import PwaMap
from pwasvar.random import substream
from pwasvar.smoothing.gaussian_kernel import GaussianKernelSpec

# Standardized half-width of the threshold-index integral; the Gaussian mass outside is below 1e-32.
SPLIT_HALF_WIDTH = 12.0


def _smooth_threshold_split(pwa_map: PwaMap, kernel: GaussianKernelSpec, z: np.ndarray, nodes: int) -> np.ndarray:
    """Integrate along the threshold index with one Gauss-Legendre rule per band.

    Writing ``u = e s + u_perp`` with ``e = a / |a|``, the band of ``z + u`` depends on ``s`` alone and
    ``E[u_perp] = 0``, so ``E[f(z + u)] = E[f(z + e s)]`` with ``s ~ N(0, h^2)``. The integrand is
    affine times Gaussian on every band, so splitting at the thresholds removes the kinks.
    """
    partition = pwa_map.partition
    norm_a = float(np.linalg.norm(partition.direction))
    e = partition.direction / norm_a
    h = kernel.bandwidth

    cuts = (partition.thresholds - float(z @ partition.direction)) / (norm_a * h)
    inner = cuts[(cuts > -SPLIT_HALF_WIDTH) & (cuts < SPLIT_HALF_WIDTH)]
    edges = np.concatenate([[-SPLIT_HALF_WIDTH], inner, [SPLIT_HALF_WIDTH]])

    x, wts = leggauss(nodes)
    total = np.zeros(pwa_map.p)
    for lo, hi in zip(edges[:-1], edges[1:]):
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        t = mid + half * x
        total += (half * wts * norm.pdf(t)) @ pwa_map.evaluate(z + np.outer(h * t, e))
    return total


def smooth_numeric(
    pwa_map: PwaMap,
    kernel: GaussianKernelSpec,
    z: np.ndarray,
    nodes: int = 64,
    max_dim: int = 4,
    mc_fallback: bool = False,
    draws: int = 10**6,
    seed: int = 42,
) -> np.ndarray:
    """Approximate ``E[f(z + u)]``, ``u ~ N(0, h^2 I)``, by deterministic quadrature.

    Threshold maps reduce to a scalar integral along ``a'z``; it is split at every threshold and each
    piece uses a `nodes`-point Gauss-Legendre rule, which is accurate to about 1e-12 for any `p`.
    Conic maps use the tensor-product Gauss-Hermite rule
    ``E[f(z + u)] ~ pi^(-p/2) sum_k w_k f(z + sqrt(2) h x_k)`` over the full grid. The result is
    deterministic for a fixed node count.

    Parameters
    ----------
    pwa_map : PwaMap
        Map to smooth (threshold or conic).
    kernel : GaussianKernelSpec
        Smoothing kernel.
    z : np.ndarray
        Evaluation point of shape (p,).
    nodes : int, default=64
        Nodes per band (threshold) or per axis (conic), at least 8.
    max_dim : int, default=4
        Largest dimension handled by the conic tensor grid.
    mc_fallback : bool, default=False
        For conic maps with ``p > max_dim``, fall back to :func:`smooth_monte_carlo` instead of raising.
    draws, seed : int
        Monte Carlo settings used by the fallback.

    Returns
    -------
    np.ndarray
        Smoothed value of shape (p,).

    Raises
    ------
    DimensionTooLarge
        If a conic map has ``p > max_dim`` and `mc_fallback` is False.
    """
    if not isinstance(nodes, int) or nodes < 8:
        raise ValueError(f"nodes must be an integer >= 8. Got {nodes}")

    z = np.asarray(z, dtype=float)
    p = pwa_map.p
    if pwa_map.kind == "threshold":
        return _smooth_threshold_split(pwa_map, kernel, z, nodes)
    if p > max_dim:
        if mc_fallback:
            return smooth_monte_carlo(pwa_map, kernel, z, draws=draws, seed=seed)[0]
        raise DimensionTooLarge(f"Tensor Gauss-Hermite grid has nodes**p points; p={p} exceeds {max_dim}. Set mc_fallback=True.")

    x, wts = hermgauss(nodes)
    u = np.sqrt(2.0) * kernel.bandwidth * x
    total = np.zeros(p)

    # Loop over the first axis; the remaining axes form a dense grid of nodes**(p-1) points.
    if p > 1:
        rest = np.stack(np.meshgrid(*([u] * (p - 1)), indexing="ij"), axis=-1).reshape(-1, p - 1)
        rest_w = np.prod(np.stack(np.meshgrid(*([wts] * (p - 1)), indexing="ij"), axis=-1).reshape(-1, p - 1), axis=1)
    else:
        rest = np.empty((1, 0))
        rest_w = np.ones(1)

    for k in range(nodes):
        pts = np.hstack([np.full((rest.shape[0], 1), u[k]), rest]) + z
        total += wts[k] * (rest_w @ pwa_map.evaluate(pts))

    return total / np.pi ** (p / 2)


def _mc_chunk(pwa_map: PwaMap, bandwidth: float, z: np.ndarray, size: int, seed: int, chunk: int) -> tuple[np.ndarray, np.ndarray]:
    u = bandwidth * substream(seed, chunk).standard_normal((size, pwa_map.p))
    vals = pwa_map.evaluate(z + u)
    return vals.sum(axis=0), (vals * vals).sum(axis=0)


def smooth_monte_carlo(
    pwa_map: PwaMap, kernel: GaussianKernelSpec, z: np.ndarray, draws: int = 10**6, seed: int = 42, chunk_size: int = 65536, n_jobs: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Monte Carlo estimate of the Gaussian-smoothed map and its standard error.

    Draws come in chunks from per-chunk Philox substreams and are reduced in chunk order, so the result
    depends only on `seed`, `draws` and `chunk_size`, never on `n_jobs`.

    Parameters
    ----------
    pwa_map : PwaMap
        Map to smooth.
    kernel : GaussianKernelSpec
        Smoothing kernel.
    z : np.ndarray
        Evaluation point of shape (p,).
    draws : int, default=10**6
        Total number of kernel draws.
    seed : int, default=42
        Master seed.
    chunk_size : int, default=65536
        Draws per substream.
    n_jobs : int, default=1
        joblib workers.

    Returns
    -------
    tuple[np.ndarray, np.ndarray]
        ``(mean, standard_error)``, each of shape (p,).
    """
    if draws < 2:
        raise ValueError(f"draws must be at least 2. Got {draws}")

    z = np.asarray(z, dtype=float)
    sizes = [min(chunk_size, draws - start) for start in range(0, draws, chunk_size)]
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_mc_chunk)(pwa_map, kernel.bandwidth, z, size, seed, i) for i, size in enumerate(sizes)
    )

    s1 = np.zeros(pwa_map.p)
    s2 = np.zeros(pwa_map.p)
    for a, b in parts:
        s1 += a
        s2 += b
    mean = s1 / draws
    var = np.maximum(s2 / draws - mean**2, 0.0) * draws / (draws - 1)
    return mean, np.sqrt(var / draws)
