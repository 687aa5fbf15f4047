"""Packing and unpacking of the flat parameter vector of a threshold piecewise-affine SVAR.

Column ``j`` (the regime-determining variable) of each switching lag matrix is stored once per regime;
every other column is stored once and shared, so unpacked maps are continuous by construction. The
strict upper triangle of the anchor regime's ``Phi0`` is fixed at zero.
"""

# Authors: pwasvar contributors
# License: BSD 3-clause

from dataclasses import dataclass

import numpy as np

from pwasvar.estimation.model_spec import ModelSpec
from pwasvar.model import PwaSvarModel, SkedasticSpec
from pwasvar.pwa import PwaMap


@dataclass(frozen=True)
class ParamLayout:
    """Index tables mapping the flat vector onto model arrays (``-1`` marks entries fixed at zero).

    Attributes
    ----------
    matrix_index : np.ndarray
        Shape (k+1, L, p, p); lag 0 is ``f0``.
    intercept_index : np.ndarray
        Shape (p,).
    shift_index : np.ndarray | None
        Shape (L, p) with the first row fixed, or None.
    threshold_index : int | None
        Position of the free threshold.
    log_sd_index : dict
        Skedastic level to shape-(p,) positions of the log standard deviations.
    names : list[str]
        Human-readable parameter names.
    """

    matrix_index: np.ndarray
    intercept_index: np.ndarray
    shift_index: np.ndarray | None
    threshold_index: int | None
    log_sd_index: dict
    names: list

    @property
    def size(self) -> int:
        return len(self.names)


def param_layout(spec: ModelSpec) -> ParamLayout:
    """Build the parameter layout of `spec`.

    Examples
    --------
    >>> param_layout(ModelSpec(p=2, k=2)).size
    19
    """
    p, k, L, j = spec.p, spec.k, spec.n_regimes, spec.threshold_index
    fixed = spec.fixed_entries()
    anchor = spec.anchor_regime - 1
    names = []
    mat_idx = np.full((k + 1, L, p, p), -1, dtype=int)

    def new(name: str) -> int:
        names.append(name)
        return len(names) - 1

    for i in range(k + 1):
        switching = i in spec.switching_lags
        for col in range(p):
            for row in range(p):
                zero_in = [ell for ell in range(L) if i == 0 and fixed[row, col] and (ell == anchor or not (switching and col == j))]
                if switching and col == j:
                    for ell in range(L):
                        if ell not in zero_in:
                            mat_idx[i, ell, row, col] = new(f"Phi{i}[{ell + 1}][{row + 1},{col + 1}]")
                elif not zero_in:
                    mat_idx[i, :, row, col] = new(f"Phi{i}[{row + 1},{col + 1}]")

    c_idx = np.array([new(f"c[{r + 1}]") for r in range(p)])

    shift_idx = None
    if spec.switching_intercept and L > 1:
        shift_idx = np.full((L, p), -1, dtype=int)
        for ell in range(1, L):
            for r in range(p):
                shift_idx[ell, r] = new(f"shift[{ell + 1}][{r + 1}]")

    tau_idx = new("tau") if spec.free_threshold else None

    log_sd_idx = {}
    if spec.skedastic != "homoskedastic":
        for level in spec.skedastic_levels:
            if level != spec.skedastic_reference:
                log_sd_idx[level] = np.array([new(f"log_sd[{level}][{r + 1}]") for r in range(p)])

    return ParamLayout(mat_idx, c_idx, shift_idx, tau_idx, log_sd_idx, names)


def _take(theta: np.ndarray, index: np.ndarray) -> np.ndarray:
    return np.where(index >= 0, theta[np.maximum(index, 0)], 0.0)


def _continuous_intercepts(matrices: np.ndarray, thresholds: tuple, j: int) -> np.ndarray:
    """Intercepts ``phi_1 = 0``, ``phi_l = phi_(l-1) - tau_(l-1) (Phi_l - Phi_(l-1)) e_j``."""
    L, p, _ = matrices.shape
    phi = np.zeros((L, p))
    for ell in range(1, L):
        phi[ell] = phi[ell - 1] - thresholds[ell - 1] * (matrices[ell][:, j] - matrices[ell - 1][:, j])
    return phi


def unpack(spec: ModelSpec, theta: np.ndarray, layout: ParamLayout = None) -> PwaSvarModel:
    """Build the model encoded by `theta`.

    Raises
    ------
    NotInvertible
        If the implied ``f0`` fails the determinant condition.
    """
    layout = layout or param_layout(spec)
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (layout.size,):
        raise ValueError(f"theta must have length {layout.size}. Got {theta.shape}")

    thresholds = spec.thresholds if layout.threshold_index is None else (float(theta[layout.threshold_index]),)
    partition = spec.partition(thresholds)
    mats = _take(theta, layout.matrix_index)
    maps = [PwaMap(partition, _continuous_intercepts(mats[i], thresholds, spec.threshold_index), mats[i]) for i in range(spec.k + 1)]

    shifts = None if layout.shift_index is None else _take(theta, layout.shift_index)

    if spec.skedastic == "homoskedastic":
        shocks = SkedasticSpec.homoskedastic(spec.p)
    else:
        sd = {spec.skedastic_reference: np.ones(spec.p)}
        sd.update({level: np.exp(theta[idx]) for level, idx in layout.log_sd_index.items()})
        if spec.skedastic == "regime":
            shocks = SkedasticSpec.regime(spec.p, sd, spec.skedastic_reference, spec.skedastic_lag)
        else:
            shocks = SkedasticSpec.dummy(spec.p, sd, spec.skedastic_reference)

    model = PwaSvarModel(maps[0], maps[1:], theta[layout.intercept_index], shocks, shifts)
    if spec.normalization == "fixed_q":
        model = model.rotated(np.array(spec.fixed_q).T)
    return model


def pack(spec: ModelSpec, model: PwaSvarModel, layout: ParamLayout = None) -> np.ndarray:
    """Read the parameter vector of `spec` off a model that satisfies its restrictions.

    Entries stored once are read from the first position that uses them; a model that violates the
    sharing restrictions is therefore projected, not rejected.
    """
    layout = layout or param_layout(spec)
    if spec.normalization == "fixed_q":
        model = model.rotated(np.array(spec.fixed_q))

    theta = np.zeros(layout.size)
    seen = np.zeros(layout.size, dtype=bool)
    mats = np.stack([model.f0.matrices] + [f.matrices for f in model.lags])

    def put(index: np.ndarray, values: np.ndarray):
        flat_idx, flat_val = index.ravel(), values.ravel()
        for pos, val in zip(flat_idx, flat_val):
            if pos >= 0 and not seen[pos]:
                theta[pos] = val
                seen[pos] = True

    put(layout.matrix_index, mats)
    put(layout.intercept_index, model.intercept)
    if layout.shift_index is not None:
        shifts = model.intercept_shifts if model.intercept_shifts is not None else np.zeros(layout.shift_index.shape)
        put(layout.shift_index, shifts)
    if layout.threshold_index is not None:
        theta[layout.threshold_index] = float(model.partition.thresholds[0])
    for level, idx in layout.log_sd_index.items():
        sd = model.shocks.sd.get(level, np.ones(spec.p)) if not model.shocks.is_homoskedastic else np.ones(spec.p)
        theta[idx] = np.log(sd)
    return theta


def normalize_signs(spec: ModelSpec, theta: np.ndarray, layout: ParamLayout = None) -> np.ndarray:
    """Flip structural equations so the anchor-regime ``Phi0`` has a positive diagonal."""
    layout = layout or param_layout(spec)
    model = unpack(spec, theta, layout)
    if spec.normalization == "fixed_q":
        model = model.rotated(np.array(spec.fixed_q))
    diag = np.diag(model.f0.matrices[spec.anchor_regime - 1])
    signs = np.where(diag < 0, -1.0, 1.0)
    if np.all(signs > 0):
        return np.asarray(theta, dtype=float).copy()
    flipped = model.rotated(np.diag(signs))
    if spec.normalization == "fixed_q":
        flipped = flipped.rotated(np.array(spec.fixed_q).T)
    return pack(spec, flipped, layout)
