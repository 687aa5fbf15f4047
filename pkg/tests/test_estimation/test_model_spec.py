"""Unit tests for estimation/model_spec.py and estimation/param_vector.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest
from scipy.stats import ortho_group

from tests.globals import SEED

from pwasvar import BoundaryAnchor, ModelValidationError
from pwasvar.estimation import ModelSpec, normalize_signs, pack, param_layout, unpack
from pwasvar.generators import PhillipsSvarGenerator


class TestModelSpec:
    """Tests for ModelSpec."""

    def test_parameter_counts(self):
        """The two-regime bivariate spec with two lags has 19, 17 and 13 free parameters."""
        spec = ModelSpec(p=2, k=2)
        assert spec.free_parameter_count() == 19
        assert spec.restricted_no_switching().free_parameter_count() == 17
        assert spec.restricted_linear().free_parameter_count() == 13

    def test_restrictions(self):
        """The nulls drop switching in f0, then everywhere."""
        spec = ModelSpec(p=2, k=2, switching_intercept=True)
        assert spec.switching_lags == (0, 1, 2)
        assert spec.restricted_no_switching().switching_lags == (1, 2)
        linear = spec.restricted_linear()
        assert linear.switching_lags == () and not linear.switching_intercept
        assert linear.is_nested_in(spec)
        assert not spec.is_nested_in(linear)

    def test_single_regime(self):
        """A one-regime spec has no thresholds and no switching."""
        spec = ModelSpec(p=2, k=1, n_regimes=1)
        assert spec.thresholds == ()
        assert spec.switching_lags == ()

    def test_anchor_regime(self):
        """The anchor selects the regime carrying the triangular restriction."""
        assert ModelSpec(p=2, k=1).anchor_regime == 1
        assert ModelSpec(p=2, k=1, anchor=(1.0, 0.0)).anchor_regime == 2

    def test_anchor_on_boundary(self):
        """Anchors on a threshold are rejected."""
        with pytest.raises(BoundaryAnchor):
            ModelSpec(p=2, k=1, anchor=(0.0, 3.0))

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"p": 0, "k": 1},
            {"p": 2, "k": 0},
            {"p": 2, "k": 1, "threshold_index": 2},
            {"p": 2, "k": 1, "thresholds": (0.0, 1.0)},
            {"p": 2, "k": 1, "n_regimes": 3, "thresholds": (0.0, 1.0), "free_threshold": True},
            {"p": 2, "k": 1, "switching_lags": (3,)},
            {"p": 2, "k": 1, "normalization": "cholesky"},
            {"p": 2, "k": 1, "normalization": "fixed_q"},
            {"p": 2, "k": 1, "normalization": "fixed_q", "fixed_q": ((1.0, 1.0), (0.0, 1.0))},
            {"p": 2, "k": 1, "skedastic": "garch"},
            {"p": 2, "k": 1, "skedastic": "regime", "skedastic_lag": 2},
            {"p": 2, "k": 1, "skedastic": "dummy", "skedastic_reference": 5},
        ],
    )
    def test_invalid(self, kwargs):
        """Malformed specs raise ModelValidationError."""
        with pytest.raises(ModelValidationError):
            ModelSpec(**kwargs)

    def test_skedastic_levels(self):
        """The skedastic variants add log standard deviations for every non-reference level."""
        regime = ModelSpec(p=2, k=1, skedastic="regime")
        assert regime.skedastic_levels == (1, 2) and regime.skedastic_reference == 1
        assert param_layout(regime).size == param_layout(ModelSpec(p=2, k=1)).size + 2
        dummy = ModelSpec(p=2, k=1, skedastic="dummy", skedastic_levels=(0, 1, 2))
        assert param_layout(dummy).size == param_layout(ModelSpec(p=2, k=1)).size + 4

    def test_free_threshold_layout(self):
        """A free threshold adds one parameter named tau."""
        spec = ModelSpec(p=2, k=1, free_threshold=True)
        assert param_layout(spec).names[-1] == "tau"
        assert spec.free_parameter_count() == ModelSpec(p=2, k=1).free_parameter_count() + 1

    def test_to_dict(self):
        """Serialization lists the structural choices."""
        d = ModelSpec(p=2, k=2, skedastic="regime").to_dict()
        assert d["switching_lags"] == [0, 1, 2]
        assert d["normalization"] == {"type": "lower_triangular"}
        assert d["skedastic"] == {"type": "regime", "lag": 1, "levels": [1, 2], "reference": 1}


class TestParamVector:
    """Tests for pack, unpack and normalize_signs."""

    def test_names(self):
        """The layout names the switching column once per regime."""
        names = param_layout(ModelSpec(p=2, k=1)).names
        assert "Phi0[1][1,1]" in names and "Phi0[2][1,1]" in names
        assert "Phi0[1,2]" not in names
        assert "Phi0[2,2]" in names
        assert names[-2:] == ["c[1]", "c[2]"]

    def test_round_trip(self):
        """Unpacking the packed truth rebuilds the calibrated model."""
        spec = ModelSpec(p=2, k=2)
        model = PhillipsSvarGenerator.model()
        rebuilt = unpack(spec, pack(spec, model))
        np.testing.assert_allclose(rebuilt.f0.matrices, model.f0.matrices)
        for a, b in zip(rebuilt.lags, model.lags):
            np.testing.assert_allclose(a.matrices, b.matrices)
        np.testing.assert_allclose(rebuilt.intercept, model.intercept)

    def test_unpacked_maps_are_continuous(self):
        """Perturbed parameter vectors with a nonzero threshold unpack to continuous maps."""
        spec = ModelSpec(p=2, k=2, thresholds=(0.7,))
        rng = np.random.default_rng(SEED)
        theta = pack(spec, PhillipsSvarGenerator.model(threshold=0.7)) + 0.05 * rng.standard_normal(param_layout(spec).size)
        model = unpack(spec, theta)
        assert model.f0.validate_continuity().passed
        assert model.lags[0].validate_continuity().passed

    def test_wrong_length(self):
        """Vectors of the wrong length are rejected."""
        with pytest.raises(ValueError):
            unpack(ModelSpec(p=2, k=1), np.zeros(3))

    def test_fixed_q_round_trip(self):
        """Under the fixed-Q normalization the rotation is undone by pack."""
        Q = ortho_group.rvs(2, random_state=SEED)
        base = ModelSpec(p=2, k=2)
        spec = ModelSpec(p=2, k=2, normalization="fixed_q", fixed_q=tuple(map(tuple, Q)))
        theta = pack(base, PhillipsSvarGenerator.model())
        rotated = unpack(spec, theta)
        np.testing.assert_allclose(rotated.f0.matrices[0], Q.T @ PhillipsSvarGenerator.model().f0.matrices[0], atol=1e-12)
        np.testing.assert_allclose(pack(spec, rotated), theta, atol=1e-12)

    def test_normalize_signs(self):
        """Flipping an equation is undone by the sign normalization."""
        spec = ModelSpec(p=2, k=2)
        model = PhillipsSvarGenerator.model()
        theta = pack(spec, model)
        flipped = pack(spec, model.rotated(np.diag([-1.0, 1.0])))
        assert not np.allclose(flipped, theta)
        np.testing.assert_allclose(normalize_signs(spec, flipped), theta)
