"""JSON configuration documents for models and model specs."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import json
import re
from importlib import resources
from typing import Any

import numpy as np

from pwasvar.estimation import ModelSpec
from pwasvar.exceptions import ModelValidationError, SchemaError
from pwasvar.model import PwaSvarModel, SkedasticSpec
from pwasvar.pwa import ConicPartition, PwaMap, ThresholdPartition

SCHEMA_VERSION = 1
BUNDLED_MODEL = "phillips_two_regime.json"

_INT_RE = re.compile(r"^-?\d+$")


def canonical_json(document: Any) -> str:
    """Serialize with sorted keys, two-space indentation and shortest round-trip floats.

    Canonicalization is idempotent: ``canonical_json(json.loads(canonical_json(d))) == canonical_json(d)``.
    """

    def default(obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")

    return json.dumps(document, sort_keys=True, indent=2, default=default) + "\n"


# Field readers


def _get(doc: dict, key: str, path: str, default: Any = ...) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError(path or "$", "expected an object")
    if key not in doc:
        if default is ...:
            raise SchemaError(_join(path, key), "missing field")
        return default
    return doc[key]


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _int(value: Any, path: str, minimum: int = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise SchemaError(path, f"must be at least {minimum}, got {value}")
    return value


def _array(value: Any, path: str, shape: tuple) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as err:
        raise SchemaError(path, f"expected numbers: {err}") from err
    if arr.shape != shape:
        raise SchemaError(path, f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(path, "entries must be finite")
    return arr


def _level(key: str) -> Any:
    if _INT_RE.match(key):
        return int(key)
    try:
        return float(key)
    except ValueError:
        return key


# Model documents


def _parse_partition(doc: dict, p: int, path: str):
    kind = _get(doc, "type", path)
    if kind == "threshold":
        direction = _array(_get(doc, "direction", path), _join(path, "direction"), (p,))
        raw = _get(doc, "thresholds", path)
        if not isinstance(raw, list):
            raise SchemaError(_join(path, "thresholds"), "expected a list")
        thresholds = _array(raw, _join(path, "thresholds"), (len(raw),))
        try:
            return ThresholdPartition(direction, thresholds)
        except ValueError as err:
            raise SchemaError(path, str(err)) from err
    if kind == "conic":
        basis = _array(_get(doc, "basis", path), _join(path, "basis"), (p, p))
        labels = _get(doc, "labels", path, None)
        return ConicPartition(basis, labels)
    raise SchemaError(_join(path, "type"), f"unknown partition type {kind!r}")


def _parse_regimes(regimes: Any, partition, p: int, path: str) -> PwaMap:
    if not isinstance(regimes, list):
        raise SchemaError(path, "expected a list of regimes")
    if len(regimes) != partition.n_regimes:
        raise SchemaError(path, f"expected {partition.n_regimes} regimes, got {len(regimes)}")
    intercepts = np.zeros((len(regimes), p))
    matrices = np.zeros((len(regimes), p, p))
    for ell, regime in enumerate(regimes):
        rpath = f"{path}[{ell}]"
        matrices[ell] = _array(_get(regime, "matrix", rpath), _join(rpath, "matrix"), (p, p))
        intercepts[ell] = _array(_get(regime, "intercept", rpath, [0.0] * p), _join(rpath, "intercept"), (p,))
    return PwaMap(partition, intercepts, matrices)


def _parse_shocks(doc: dict, p: int, path: str) -> SkedasticSpec:
    kind = _get(doc, "type", path, "homoskedastic")
    if kind == "homoskedastic":
        return SkedasticSpec.homoskedastic(p)
    if kind not in ("regime", "dummy"):
        raise SchemaError(_join(path, "type"), f"unknown skedastic type {kind!r}")
    raw_sd = _get(doc, "sd", path)
    if not isinstance(raw_sd, dict):
        raise SchemaError(_join(path, "sd"), "expected an object keyed by level")
    sd = {_level(str(key)): _array(val, f"{_join(path, 'sd')}.{key}", (p,)) for key, val in raw_sd.items()}
    reference = _get(doc, "reference", path)
    if kind == "regime":
        lag = _int(_get(doc, "lag", path, 1), _join(path, "lag"), 1)
        return SkedasticSpec.regime(p, sd, reference, lag)
    return SkedasticSpec.dummy(p, sd, reference)


def _parse_model(doc: dict) -> PwaSvarModel:
    p = _int(_get(doc, "p", ""), "p", 1)
    k = _int(_get(doc, "k", ""), "k", 1)
    partition = _parse_partition(_get(doc, "partition", ""), p, "partition")
    f0 = _parse_regimes(_get(doc, "regimes", ""), partition, p, "regimes")

    lags_doc = _get(doc, "lags", "")
    if not isinstance(lags_doc, list) or len(lags_doc) != k:
        raise SchemaError("lags", f"expected a list of {k} lag maps")
    lags = [_parse_regimes(_get(lag, "regimes", f"lags[{i}]"), partition, p, f"lags[{i}].regimes") for i, lag in enumerate(lags_doc)]

    intercept = _array(_get(doc, "intercept", "", [0.0] * p), "intercept", (p,))
    shifts = _get(doc, "intercept_shifts", "", None)
    if shifts is not None:
        shifts = _array(shifts, "intercept_shifts", (partition.n_regimes, p))
    shocks = _parse_shocks(_get(doc, "shocks", "", {"type": "homoskedastic"}), p, "shocks")
    return PwaSvarModel(f0, lags, intercept, shocks, shifts)


def _parse_spec(doc: dict) -> ModelSpec:
    norm = _get(doc, "normalization", "", {"type": "lower_triangular"})
    sked = _get(doc, "skedastic", "", {"type": "homoskedastic"})
    levels = _get(sked, "levels", "skedastic", None)
    kwargs = dict(
        p=_int(_get(doc, "p", ""), "p", 1),
        k=_int(_get(doc, "k", ""), "k", 1),
        n_regimes=_int(_get(doc, "n_regimes", "", 2), "n_regimes", 1),
        threshold_index=_int(_get(doc, "threshold_index", "", 0), "threshold_index", 0),
        thresholds=tuple(_get(doc, "thresholds", "", [0.0])),
        free_threshold=bool(_get(doc, "free_threshold", "", False)),
        switching_lags=_get(doc, "switching_lags", "", None),
        switching_intercept=bool(_get(doc, "switching_intercept", "", False)),
        normalization=_get(norm, "type", "normalization", "lower_triangular"),
        anchor=_get(norm, "anchor", "normalization", None),
        fixed_q=_get(norm, "q", "normalization", None),
        skedastic=_get(sked, "type", "skedastic", "homoskedastic"),
        skedastic_lag=_int(_get(sked, "lag", "skedastic", 1), "skedastic.lag", 1),
        skedastic_levels=None if levels is None else tuple(levels),
        skedastic_reference=_get(sked, "reference", "skedastic", None),
    )
    if kwargs["switching_lags"] is not None:
        kwargs["switching_lags"] = tuple(kwargs["switching_lags"])
    return ModelSpec(**kwargs)


def parse_model_config(text: str) -> PwaSvarModel | ModelSpec:
    """Parse a JSON model or model-spec document.

    A document with ``"kind": "spec"`` (or without a ``regimes`` field) is a :class:`ModelSpec`;
    otherwise it describes a fully parametrized :class:`PwaSvarModel`, validated for continuity and
    the determinant condition.

    An estimation document (no ``kind`` or ``regimes`` but a ``model`` object) is read through its
    ``model`` entry, so the output of ``pwasvar estimate`` feeds the other commands.

    Raises
    ------
    SchemaError
        With the JSON path of the offending field.
    ModelValidationError
        When the parsed model fails continuity or invertibility.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError("$", f"invalid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    if isinstance(doc.get("model"), dict) and "kind" not in doc and "regimes" not in doc:
        doc = doc["model"]
    version = _get(doc, "schema_version", "", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"unsupported version {version!r}; expected {SCHEMA_VERSION}")
    kind = _get(doc, "kind", "", "model" if "regimes" in doc else "spec")
    if kind == "spec":
        return _parse_spec(doc)
    if kind != "model":
        raise SchemaError("kind", f"expected 'model' or 'spec', got {kind!r}")
    return _parse_model(doc)


def _map_regimes(pwa_map: PwaMap) -> list[dict]:
    return [{"intercept": pwa_map.intercepts[ell].tolist(), "matrix": pwa_map.matrices[ell].tolist()} for ell in range(pwa_map.n_regimes)]


def model_to_config(model: PwaSvarModel) -> dict:
    """Configuration document of `model`."""
    part = model.partition
    if isinstance(part, ThresholdPartition):
        partition = {"type": "threshold", "direction": part.direction.tolist(), "thresholds": part.thresholds.tolist()}
    else:
        partition = {"type": "conic", "basis": part.basis.tolist(), "labels": np.asarray(part.labels).tolist()}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "model",
        "p": model.p,
        "k": model.k,
        "partition": partition,
        "regimes": _map_regimes(model.f0),
        "lags": [{"regimes": _map_regimes(f)} for f in model.lags],
        "intercept": model.intercept.tolist(),
        "shocks": model.shocks.to_dict(),
    }
    if model.intercept_shifts is not None:
        doc["intercept_shifts"] = model.intercept_shifts.tolist()
    return doc


def spec_to_config(spec: ModelSpec) -> dict:
    """Configuration document of `spec`."""
    return {"schema_version": SCHEMA_VERSION, "kind": "spec", **spec.to_dict()}


def load_model(path: str) -> PwaSvarModel | ModelSpec:
    """Read and parse a configuration file."""
    with open(path, encoding="utf-8") as fh:
        return parse_model_config(fh.read())


def load_bundled_model() -> PwaSvarModel:
    """The bundled two-regime bivariate Phillips-curve model."""
    text = (resources.files("pwasvar") / "data" / BUNDLED_MODEL).read_text(encoding="utf-8")
    model = parse_model_config(text)
    if not isinstance(model, PwaSvarModel):
        raise ModelValidationError(f"{BUNDLED_MODEL} does not describe a model")
    return model
