"""Unit tests for smoothing/smoothed_threshold.py, smoothing/numeric.py and smoothing/gaussian_kernel.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from tests.globals import SEED

from pwasvar import DimensionTooLarge, NotThresholdAffine, PwaMap
from pwasvar.generators import PwaMapGenerator
from pwasvar.pwa import invert
from pwasvar.smoothing import GaussianKernelSpec, invert_smooth, smooth_monte_carlo, smooth_numeric, smooth_threshold_affine


def relu() -> PwaMap:
    return PwaMap.threshold([1.0], [0.0], [[0.0], [0.0]], [[[0.0]], [[1.0]]])


def certified_map() -> PwaMap:
    return PwaMap.from_threshold_steps([1.0, 0.0], [0.0], [0.1, -0.2], np.eye(2), [[0.5, 0.3]])


class TestGaussianKernelSpec:
    """Tests for GaussianKernelSpec."""

    @pytest.mark.parametrize("bandwidth", [0.0, -1.0, np.inf, np.nan, True])
    def test_invalid_bandwidth(self, bandwidth):
        """Bandwidths must be positive finite numbers."""
        with pytest.raises(ValueError):
            GaussianKernelSpec(bandwidth)

    def test_sigma_along(self):
        """The index standard deviation scales with the norm of the direction."""
        assert GaussianKernelSpec(0.5).sigma_along(np.array([3.0, 4.0])) == pytest.approx(2.5)

    def test_density_at_origin(self):
        """The kernel density at zero is the Gaussian normalizing constant."""
        assert GaussianKernelSpec(2.0).density(np.zeros(2)) == pytest.approx(1.0 / (2.0 * np.pi * 4.0))


class TestSmoothThresholdAffine:
    """Tests for smooth_threshold_affine and SmoothedThresholdMap."""

    def test_relu_at_zero(self):
        """The smoothed ReLU at the kink equals h / sqrt(2 pi)."""
        for h in (0.1, 1.0, 3.0):
            sm = smooth_threshold_affine(relu(), GaussianKernelSpec(h))
            assert sm.evaluate(np.array([0.0]))[0] == pytest.approx(h / np.sqrt(2.0 * np.pi), rel=1e-12)

    def test_conic_map_rejected(self):
        """Closed-form smoothing is only defined for threshold maps."""
        with pytest.raises(NotThresholdAffine):
            smooth_threshold_affine(PwaMapGenerator.generate_conic(seed=SEED), GaussianKernelSpec(1.0))

    def test_affine_map_is_fixed_point(self):
        """Smoothing a globally affine map leaves it unchanged."""
        rng = np.random.default_rng(SEED)
        f = PwaMap.threshold([1.0, -1.0], [0.5], [[1.0, 2.0], [1.0, 2.0]], [[[2.0, 1.0], [0.0, 1.0]], [[2.0, 1.0], [0.0, 1.0]]])
        sm = smooth_threshold_affine(f, GaussianKernelSpec(0.7))
        z = rng.standard_normal((25, 2))
        np.testing.assert_allclose(sm.evaluate(z), f.evaluate(z), atol=1e-12)
        np.testing.assert_allclose(smooth_numeric(f, GaussianKernelSpec(0.7), z[0]), f.evaluate(z[0]), atol=1e-10)

    def test_small_bandwidth_limit(self):
        """As the bandwidth vanishes the smoothed map tends to the base map."""
        rng = np.random.default_rng(SEED)
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=2, n_regimes=3)
        sm = smooth_threshold_affine(f, GaussianKernelSpec(1e-8))
        z = rng.standard_normal((20, 2))
        np.testing.assert_allclose(sm.evaluate(z), f.evaluate(z), atol=1e-6)

    def test_band_weights_sum_to_one(self):
        """Band probabilities form a distribution at every point."""
        rng = np.random.default_rng(SEED)
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=3, n_regimes=4)
        sm = smooth_threshold_affine(f, GaussianKernelSpec(0.5))
        weights = sm.band_weights(rng.standard_normal((30, 3)))
        assert weights.shape == (30, 4)
        assert np.all(weights >= 0.0)
        np.testing.assert_allclose(weights.sum(axis=1), 1.0)

    def test_jacobian_matches_finite_differences(self):
        """The analytic Jacobian agrees with central differences."""
        rng = np.random.default_rng(SEED)
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=2, n_regimes=3)
        sm = smooth_threshold_affine(f, GaussianKernelSpec(0.4))
        eps = 1e-6
        for z in rng.standard_normal((10, 2)):
            fd = np.column_stack([(sm.evaluate(z + eps * e) - sm.evaluate(z - eps * e)) / (2 * eps) for e in np.eye(2)])
            np.testing.assert_allclose(sm.jacobian_at(z), fd, atol=1e-6)

    def test_jacobian_in_convex_hull(self):
        """The Jacobian is the band-weighted average of the regime matrices."""
        f = certified_map()
        sm = smooth_threshold_affine(f, GaussianKernelSpec(1.0))
        z = np.array([0.3, -1.0])
        w = sm.band_weights(z)
        np.testing.assert_allclose(sm.jacobian_at(z), w[0] * f.matrices[0] + w[1] * f.matrices[1], atol=1e-12)

    def test_matches_monte_carlo(self):
        """The closed form lies within a few Monte Carlo standard errors."""
        rng = np.random.default_rng(SEED)
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=2, n_regimes=3)
        kernel = GaussianKernelSpec(0.8)
        sm = smooth_threshold_affine(f, kernel)
        for i, z in enumerate(rng.standard_normal((3, 2))):
            mean, se = smooth_monte_carlo(f, kernel, z, draws=200_000, seed=SEED + i)
            assert np.all(np.abs(mean - sm.evaluate(z)) <= 4.5 * se + 1e-12)

    @pytest.mark.parametrize("z", [0.0, 0.3, -1.1, 2.5])
    def test_quadrature_matches_closed_form_kink(self, z):
        """Quadrature split at the kink reproduces the smoothed ReLU to 1e-8 with 64 nodes."""
        kernel = GaussianKernelSpec(1.0)
        exact = smooth_threshold_affine(relu(), kernel).evaluate(np.array([z]))
        np.testing.assert_allclose(smooth_numeric(relu(), kernel, np.array([z]), nodes=64), exact, rtol=0.0, atol=1e-8)

    def test_quadrature_matches_closed_form_three_regimes(self):
        """The split quadrature agrees with the closed form for a random three-regime map in p = 3."""
        rng = np.random.default_rng(SEED)
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=3, n_regimes=3)
        kernel = GaussianKernelSpec(0.6)
        sm = smooth_threshold_affine(f, kernel)
        for z in rng.standard_normal((5, 3)):
            np.testing.assert_allclose(smooth_numeric(f, kernel, z), sm.evaluate(z), rtol=0.0, atol=1e-8)


class TestSmoothNumeric:
    """Tests for smooth_numeric and smooth_monte_carlo."""

    def test_too_few_nodes(self):
        """Fewer than eight nodes are rejected."""
        with pytest.raises(ValueError):
            smooth_numeric(relu(), GaussianKernelSpec(1.0), np.array([0.0]), nodes=4)

    def test_dimension_too_large(self):
        """The conic tensor grid refuses p > max_dim unless the Monte Carlo fallback is enabled."""
        f = PwaMapGenerator.generate_conic(seed=SEED, p=5)
        with pytest.raises(DimensionTooLarge):
            smooth_numeric(f, GaussianKernelSpec(1.0), np.zeros(5), nodes=8)
        value = smooth_numeric(f, GaussianKernelSpec(1.0), np.zeros(5), nodes=8, mc_fallback=True, draws=1000, seed=SEED)
        assert value.shape == (5,)

    def test_threshold_map_has_no_dimension_limit(self):
        """Threshold maps use the scalar split rule in any dimension."""
        f = PwaMapGenerator.generate_threshold(seed=SEED, p=6)
        kernel = GaussianKernelSpec(0.5)
        z = np.linspace(-1.0, 1.0, 6)
        np.testing.assert_allclose(smooth_numeric(f, kernel, z), smooth_threshold_affine(f, kernel).evaluate(z), rtol=0.0, atol=1e-8)

    def test_deterministic(self):
        """Repeated quadrature returns identical values."""
        f = PwaMapGenerator.generate_conic(seed=SEED)
        kernel = GaussianKernelSpec(0.5)
        z = np.array([0.2, -0.1])
        np.testing.assert_array_equal(smooth_numeric(f, kernel, z, nodes=16), smooth_numeric(f, kernel, z, nodes=16))

    def test_monte_carlo_independent_of_jobs(self):
        """Chunked Monte Carlo gives the same answer for any worker count."""
        f = PwaMapGenerator.generate_conic(seed=SEED)
        kernel = GaussianKernelSpec(0.5)
        z = np.zeros(2)
        serial = smooth_monte_carlo(f, kernel, z, draws=5000, seed=SEED, chunk_size=1000, n_jobs=1)
        parallel = smooth_monte_carlo(f, kernel, z, draws=5000, seed=SEED, chunk_size=1000, n_jobs=2)
        np.testing.assert_allclose(serial[0], parallel[0], rtol=0, atol=1e-14)
        np.testing.assert_allclose(serial[1], parallel[1], rtol=0, atol=1e-14)

    def test_monte_carlo_draws_validated(self):
        """At least two draws are required for a standard error."""
        with pytest.raises(ValueError):
            smooth_monte_carlo(relu(), GaussianKernelSpec(1.0), np.array([0.0]), draws=1)

    def test_conic_quadrature_matches_monte_carlo(self):
        """Gauss-Hermite and Monte Carlo agree on a conic map."""
        f = PwaMapGenerator.generate_conic(seed=SEED)
        kernel = GaussianKernelSpec(1.0)
        z = np.zeros(2)
        mean, se = smooth_monte_carlo(f, kernel, z, draws=400_000, seed=SEED)
        np.testing.assert_allclose(smooth_numeric(f, kernel, z, nodes=64), mean, atol=5.0 * se.max() + 1e-2)


class TestInvertSmooth:
    """Tests for invert_smooth."""

    @pytest.mark.parametrize("bandwidth", [0.1, 1.0])
    def test_round_trip(self, bandwidth):
        """Inverting the smoothed map recovers the original points."""
        rng = np.random.default_rng(SEED)
        sm = smooth_threshold_affine(certified_map(), GaussianKernelSpec(bandwidth))
        z = 2.0 * rng.standard_normal((1000, 2))
        np.testing.assert_allclose(invert_smooth(sm, sm.evaluate(z)), z, atol=1e-8)

    def test_small_bandwidth_matches_base_inverse(self):
        """For tiny bandwidths the inverse approaches the piecewise inverse."""
        f = certified_map()
        sm = smooth_threshold_affine(f, GaussianKernelSpec(1e-6))
        w = np.array([0.7, -0.4])
        np.testing.assert_allclose(invert_smooth(sm, w), invert(f, w), atol=1e-5)

    def test_linear_map_is_linear_solve(self):
        """A single-regime map inverts by the linear solve."""
        f = PwaMap.linear([[2.0, 1.0], [0.0, 1.0]], [1.0, 0.0])
        sm = smooth_threshold_affine(f, GaussianKernelSpec(1.0))
        w = np.array([3.0, 2.0])
        np.testing.assert_allclose(invert_smooth(sm, w), np.linalg.solve([[2.0, 1.0], [0.0, 1.0]], w - [1.0, 0.0]))
