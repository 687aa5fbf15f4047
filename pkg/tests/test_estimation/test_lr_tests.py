"""Unit tests for estimation/lr_tests.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest
from scipy.stats import chi2

from tests.globals import SEED

from pwasvar import DomainError, NotNested
from pwasvar.estimation import EstimationOptions, LRTestResult, ModelSpec, chi2_sf, lr_test, test_hypotheses
from pwasvar.generators import PhillipsSvarGenerator


@pytest.fixture(scope="module")
def report():
    _, data = PhillipsSvarGenerator.generate(seed=SEED, T=300)
    options = EstimationOptions(restarts=0, seed=SEED, max_iters=1500, compute_covariance=False)
    return test_hypotheses(ModelSpec(p=2, k=2), data, options)


class TestChi2Sf:
    """Tests for chi2_sf."""

    @pytest.mark.parametrize("x, df", [(0.5, 1), (3.841459, 1), (12.0, 6), (40.0, 2)])
    def test_matches_scipy(self, x, df):
        """The upper tail matches scipy's chi-squared survival function."""
        assert chi2_sf(x, df) == pytest.approx(chi2.sf(x, df), rel=1e-10)

    def test_zero(self):
        """A zero statistic has p-value one."""
        assert chi2_sf(0.0, 3) == 1.0

    @pytest.mark.parametrize("x, df", [(-1.0, 2), (np.inf, 2), (1.0, 0)])
    def test_domain(self, x, df):
        """Negative or infinite statistics and zero degrees of freedom are rejected."""
        with pytest.raises(DomainError):
            chi2_sf(x, df)


class TestLRTestResult:
    """Tests for LRTestResult."""

    def test_formatted(self):
        """Rows print as statistic [p-value]."""
        row = LRTestResult.from_statistic(3.841459, 1, "linear")
        assert row.formatted() == "3.8 [0.05]"
        assert not row.clamped

    def test_negative_statistic_clamped(self):
        """Negative statistics beyond the tolerance are clamped at zero with a warning."""
        with pytest.warns(RuntimeWarning):
            row = LRTestResult.from_statistic(-0.5, 2, "no_switching")
        assert row.statistic == 0.0 and row.p_value == 1.0
        assert row.clamped and row.raw_statistic == -0.5

    def test_tiny_negative_not_flagged(self):
        """Optimizer noise below the tolerance is clamped silently."""
        row = LRTestResult.from_statistic(-1e-9, 2)
        assert row.statistic == 0.0 and not row.clamped


class TestHypotheses:
    """Tests for test_hypotheses and lr_test."""

    def test_rows(self, report):
        """Both nulls are tested with 2 and 6 restrictions."""
        assert [r.hypothesis for r in report.rows] == ["no_switching", "linear"]
        assert [r.df for r in report.rows] == [2, 6]
        for r in report.rows:
            assert r.statistic >= 0.0
            assert 0.0 <= r.p_value <= 1.0

    def test_likelihoods_ordered(self, report):
        """Warm starts keep the fitted likelihoods ordered."""
        assert report.unrestricted.log_likelihood >= report.no_switching.log_likelihood - 1e-6
        assert report.no_switching.log_likelihood >= report.linear.log_likelihood - 1e-6

    def test_frame_and_dict(self, report):
        """The report exports a table and a JSON-ready dict."""
        frame = report.to_frame()
        assert list(frame.columns) == ["hypothesis", "restrictions", "statistic", "p_value"]
        assert set(report.to_dict()["log_likelihood"]) == {"unrestricted", "no_switching", "linear"}

    def test_not_nested(self, report):
        """Swapping the fits is rejected."""
        with pytest.raises(NotNested):
            lr_test(report.linear, report.unrestricted)

    def test_inconsistent_df(self, report):
        """A restriction count other than the parameter difference is rejected."""
        with pytest.raises(NotNested):
            lr_test(report.unrestricted, report.linear, df=3)

    def test_needs_switching_f0(self):
        """The nulls are defined only for two-regime specs with a switching f0."""
        with pytest.raises(NotNested):
            test_hypotheses(ModelSpec(p=2, k=1, n_regimes=1), np.zeros((50, 2)))
