"""Unit tests for generators/pwa_map_generator.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from tests.globals import SEED

from pwasvar.generators import PwaMapGenerator
from pwasvar.pwa import check_invertibility


class TestPwaMapGenerator:
    """Tests for PwaMapGenerator."""

    def test_generate_threshold_shape(self):
        """Threshold maps have the requested dimension and number of bands."""
        pwa_map = PwaMapGenerator.generate_threshold(seed=SEED, p=3, n_regimes=4)
        assert pwa_map.kind == "threshold"
        assert pwa_map.n_regimes == 4
        assert pwa_map.matrices.shape == (4, 3, 3)

    def test_generate_threshold_deterministic(self):
        """The same seed gives the same map; another seed does not."""
        a = PwaMapGenerator.generate_threshold(seed=SEED)
        b = PwaMapGenerator.generate_threshold(seed=SEED)
        c = PwaMapGenerator.generate_threshold(seed=SEED + 1)
        assert a == b
        assert a != c

    def test_adjacent_regimes_differ_by_rank_one(self):
        """Neighbouring bands differ by a rank-one step, so the map is continuous."""
        pwa_map = PwaMapGenerator.generate_threshold(seed=SEED, p=3, n_regimes=3)
        for ell in range(2):
            assert np.linalg.matrix_rank(pwa_map.matrices[ell + 1] - pwa_map.matrices[ell]) <= 1

    def test_zero_steps_are_linear(self):
        """Without steps every band carries the same matrix."""
        pwa_map = PwaMapGenerator.generate_threshold(seed=SEED, p=2, n_regimes=3, step_scale=0.0)
        np.testing.assert_array_equal(pwa_map.matrices[0], pwa_map.matrices[2])
        assert check_invertibility(pwa_map).invertible

    def test_single_regime(self):
        """One band is a plain affine map."""
        assert PwaMapGenerator.generate_threshold(seed=SEED, n_regimes=1).n_regimes == 1

    @pytest.mark.parametrize("kwargs, message", [({"p": 0}, "p must be a positive integer. Got 0"), ({"n_regimes": 0}, "n_regimes must be a positive integer. Got 0")])
    def test_generate_threshold_invalid(self, kwargs, message):
        """Non-positive sizes are rejected."""
        with pytest.raises(ValueError) as excinfo:
            PwaMapGenerator.generate_threshold(seed=SEED, **kwargs)

        assert str(excinfo.value) == message

    def test_generate_conic(self):
        """Conic maps have one regime per orthant and no intercepts."""
        pwa_map = PwaMapGenerator.generate_conic(seed=SEED, p=3)
        assert pwa_map.kind == "conic"
        assert pwa_map.n_regimes == 8
        np.testing.assert_array_equal(pwa_map.intercepts, 0.0)

    def test_generate_conic_without_spread(self):
        """Equal half-space columns make the conic map linear."""
        pwa_map = PwaMapGenerator.generate_conic(seed=SEED, p=2, spread=0.0)
        for matrix in pwa_map.matrices[1:]:
            np.testing.assert_allclose(matrix, pwa_map.matrices[0])

    def test_generate_conic_invalid(self):
        """Non-positive dimensions are rejected."""
        with pytest.raises(ValueError) as excinfo:
            PwaMapGenerator.generate_conic(seed=SEED, p=-1)

        assert str(excinfo.value) == "p must be a positive integer. Got -1"
