"""Unit tests for runners/recovery_runner.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from tests.globals import SEED

from pwasvar.runners import RecoveryRunner


class TestRecoveryRunner:
    """Tests for RecoveryRunner."""

    def test_truth(self):
        """The truth is the calibrated model in the layout of the estimated spec."""
        truth = RecoveryRunner(experiment_name="recovery", seed=SEED, n_replicates=1, sample_sizes=[100]).truth()
        assert len(truth) == 19
        assert np.all(np.isfinite(truth.to_numpy()))

    def test_recovery_share_needs_a_run(self):
        """The share is only defined after a run."""
        runner = RecoveryRunner(experiment_name="recovery", seed=SEED, n_replicates=1, sample_sizes=[100])
        with pytest.raises(ValueError):
            runner.recovery_share()

    def test_run(self, tmp_path):
        """Replicate rows carry every estimate and the summary has one row per parameter."""
        runner = RecoveryRunner(
            experiment_name="recovery", seed=SEED, n_replicates=2, sample_sizes=[300], restarts=0, output_directory=str(tmp_path)
        )
        run_stats, summary = runner.run()
        truth = runner.truth()
        assert len(run_stats) == 2
        assert set(truth.index) <= set(run_stats.columns)
        assert (run_stats["linear_max_abs_dev"] < 1e-3).all()
        assert len(summary) == len(truth)
        np.testing.assert_allclose(summary["truth"], truth.to_numpy())
        share = runner.recovery_share()
        assert list(share.index) == [300]
        assert 0.0 <= share.iloc[0] <= 1.0
        assert (tmp_path / "recovery" / "recovery__recovery__summary_df.csv").exists()
