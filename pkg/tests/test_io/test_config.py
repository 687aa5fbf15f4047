"""Unit tests for io/config.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import json

import numpy as np
import pytest

from pwasvar import ModelValidationError, SchemaError
from pwasvar.estimation import ModelSpec
from pwasvar.generators import PhillipsSvarGenerator
from pwasvar.io import (
    SCHEMA_VERSION,
    canonical_json,
    load_bundled_model,
    load_model,
    model_to_config,
    parse_model_config,
    spec_to_config,
)
from pwasvar.irf import kinked_slope
from pwasvar.model import PwaSvarModel, SkedasticSpec


@pytest.fixture
def bundled_doc():
    return model_to_config(load_bundled_model())


class TestCanonicalJson:
    """Tests for canonical_json."""

    def test_idempotent(self, bundled_doc):
        """Canonicalizing a parsed canonical document changes nothing."""
        text = canonical_json(bundled_doc)
        assert canonical_json(json.loads(text)) == text
        assert text.endswith("\n")

    def test_sorted_keys_and_numpy_values(self):
        """Keys are sorted and numpy scalars and arrays serialize as plain JSON."""
        text = canonical_json({"b": np.float64(0.1), "a": np.arange(2), "c": np.bool_(True), "d": np.int64(3)})
        assert list(json.loads(text)) == ["a", "b", "c", "d"]
        assert json.loads(text) == {"a": [0, 1], "b": 0.1, "c": True, "d": 3}

    def test_unserializable(self):
        """Arbitrary objects are rejected."""
        with pytest.raises(TypeError):
            canonical_json({"x": object()})


class TestModelConfig:
    """Tests for parsing and writing model documents."""

    def test_bundled_model(self):
        """The bundled model is the calibrated two-regime Phillips-curve SVAR."""
        model = load_bundled_model()
        reference = PhillipsSvarGenerator.model()
        assert isinstance(model, PwaSvarModel)
        assert (model.p, model.k, model.n_regimes) == (2, 2, 2)
        np.testing.assert_allclose(model.f0.matrices, reference.f0.matrices, atol=1e-12)
        for lag, reference_lag in zip(model.lags, reference.lags):
            np.testing.assert_allclose(lag.matrices, reference_lag.matrices, atol=1e-12)
        np.testing.assert_array_equal(model.intercept, [0.0, 0.5])
        assert kinked_slope(model, 1) == pytest.approx(0.5)
        assert kinked_slope(model, 2) == pytest.approx(2.0)

    def test_round_trip_with_skedastic_shocks(self):
        """A written document parses back to an equal model, regime-keyed variances included."""
        model = PhillipsSvarGenerator.model().with_shocks(SkedasticSpec.regime(2, {1: [1.0, 1.0], 2: [3.0, 0.5]}))
        parsed = parse_model_config(canonical_json(model_to_config(model)))
        assert parsed == model
        assert parsed.shocks.variant == "regime"
        assert set(parsed.shocks.sd) == {1, 2}

    def test_load_model_from_file(self, tmp_path, bundled_doc):
        """Files are read as UTF-8 JSON."""
        path = tmp_path / "model.json"
        path.write_text(canonical_json(bundled_doc), encoding="utf-8")
        assert load_model(str(path)) == load_bundled_model()

    def test_estimation_document_unwraps_model(self, bundled_doc):
        """A document holding the model under "model" parses to that model."""
        document = {"log_likelihood": -12.5, "spec": {"p": 2, "k": 2}, "model": bundled_doc, "variables": ["a", "b"]}
        assert parse_model_config(canonical_json(document)) == load_bundled_model()

    def test_explicit_kind_is_not_unwrapped(self, bundled_doc):
        """Documents with their own kind are parsed as they are."""
        document = {"kind": "spec", "p": 2, "k": 1, "model": bundled_doc}
        assert isinstance(parse_model_config(json.dumps(document)), ModelSpec)

    def test_invalid_json(self):
        """Malformed text is a schema error at the root."""
        with pytest.raises(SchemaError) as err:
            parse_model_config("{not json")
        assert err.value.path == "$"

    def test_not_an_object(self):
        """The root must be an object."""
        with pytest.raises(SchemaError):
            parse_model_config("[1, 2]")

    def test_missing_field(self, bundled_doc):
        """A missing required field is reported by name."""
        del bundled_doc["p"]
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "p"

    def test_wrong_matrix_shape(self, bundled_doc):
        """Shape errors carry the JSON path of the offending matrix."""
        bundled_doc["regimes"][1]["matrix"] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "regimes[1].matrix"

    def test_non_finite_entry(self, bundled_doc):
        """Entries must be finite numbers."""
        bundled_doc["intercept"] = ["x", 0.0]
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "intercept"

    def test_wrong_regime_count(self, bundled_doc):
        """Regime lists must match the partition."""
        bundled_doc["regimes"] = bundled_doc["regimes"][:1]
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "regimes"

    def test_wrong_lag_count(self, bundled_doc):
        """There must be exactly k lag maps."""
        bundled_doc["k"] = 3
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "lags"

    def test_unsupported_version(self, bundled_doc):
        """Only the current schema version is accepted."""
        bundled_doc["schema_version"] = SCHEMA_VERSION + 1
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == "schema_version"

    @pytest.mark.parametrize(
        "field, value, path",
        [
            ("kind", "neither", "kind"),
            ("partition", {"type": "spiral"}, "partition.type"),
            ("shocks", {"type": "garch"}, "shocks.type"),
            ("p", True, "p"),
            ("k", 0, "k"),
        ],
    )
    def test_invalid_fields(self, bundled_doc, field, value, path):
        """Unknown types and bad integers are schema errors."""
        bundled_doc[field] = value
        with pytest.raises(SchemaError) as err:
            parse_model_config(json.dumps(bundled_doc))
        assert err.value.path == path

    def test_non_invertible_model(self, bundled_doc):
        """A continuous model that fails the determinant condition is rejected after parsing."""
        bundled_doc["regimes"][1]["matrix"] = [[-1.0, 0.0], [-2.0, 1.0]]
        with pytest.raises(ModelValidationError):
            parse_model_config(json.dumps(bundled_doc))


class TestSpecConfig:
    """Tests for model-spec documents."""

    def test_round_trip(self):
        """A spec document parses back to the same spec."""
        spec = ModelSpec(p=2, k=2, switching_lags=(1,), skedastic="regime", skedastic_levels=(1, 2), skedastic_reference=1)
        parsed = parse_model_config(canonical_json(spec_to_config(spec)))
        assert isinstance(parsed, ModelSpec)
        assert parsed.to_dict() == spec.to_dict()

    def test_kind_defaults_to_spec(self):
        """A document without regimes is a spec."""
        parsed = parse_model_config(json.dumps({"p": 2, "k": 1}))
        assert isinstance(parsed, ModelSpec)
        assert parsed.n_regimes == 2
        assert parsed.normalization == "lower_triangular"
