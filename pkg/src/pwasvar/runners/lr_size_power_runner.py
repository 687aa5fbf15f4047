"""
Class for running size and power experiments of the likelihood-ratio linearity tests.

Example usage:

    runner = LRSizePowerRunner(experiment_name='lr_size_power',
                               output_directory=OUTPUT_DIRECTORY,
                               seed=SEED,
                               n_replicates=500,
                               sample_sizes=[500],
                               switching_list=[False, True])

    df_run_stats, df_summary = runner.run()
"""

# Authors: pwasvar contributors
# License: BSD 3-clause

from typing import Any

import pandas as pd

from pwasvar.decorators import short_name
from pwasvar.estimation import EstimationOptions, ModelSpec, test_hypotheses
from pwasvar.generators import PhillipsSvarGenerator
from pwasvar.runners._runner_base import _RunnerBase


@short_name("lr_size_power")
class LRSizePowerRunner(_RunnerBase):
    """
    A runner that applies both LR tests to samples from a linear or a switching DGP.

    Under the linear DGP the rejection rates estimate the size of the tests; under the switching DGP
    they estimate power. The summary has one row per (DGP, sample size, hypothesis, level).

    Attributes
    ----------
    sample_sizes : list[int]
        Sample sizes T.
    switching_list : list[bool]
        DGPs to draw from; False is the linear SVAR.
    levels : tuple[float, ...]
        Nominal levels at which rejections are counted.
    kappa_slack, kappa_tight : float
        Phillips-curve slopes of the switching DGP.
    restarts : int
        Perturbed starts of each fit.
    """

    def __init__(
        self,
        experiment_name: str,
        seed: int,
        n_replicates: int,
        sample_sizes: list[int],
        switching_list: list[bool] = (False, True),
        levels: tuple = (0.01, 0.05),
        kappa_slack: float = 0.5,
        kappa_tight: float = 2.0,
        restarts: int = 1,
        output_directory: str = None,
        n_jobs: int = 1,
        **kwargs: Any,
    ):
        """
        Initialize the LRSizePowerRunner.

        Parameters
        ----------
        experiment_name : str
            Name of the experiment.
        seed : int
            Random seed for reproducibility.
        n_replicates : int
            Replicates per grid point.
        sample_sizes : list of int
            Sample sizes to test.
        switching_list : list of bool, optional
            DGPs to draw from, default both.
        levels : tuple of float, optional, default=(0.01, 0.05)
            Nominal test levels.
        kappa_slack, kappa_tight : float, optional, defaults=0.5 and 2.0
            Phillips-curve slopes of the switching DGP.
        restarts : int, optional, default=1
            Perturbed starts of each fit.
        output_directory : str, optional
            Directory to save experiment results, default=None.
        n_jobs : int, optional, default=1
            joblib workers across replicates.
        """
        if any(not 0.0 < a < 1.0 for a in levels):
            raise ValueError(f"levels must lie in (0, 1). Got {levels}")
        super().__init__(
            experiment_name=experiment_name,
            seed=seed,
            n_replicates=n_replicates,
            output_directory=output_directory,
            n_jobs=n_jobs,
            **kwargs,
        )
        self.sample_sizes: list[int] = sample_sizes
        self.switching_list: list[bool] = list(switching_list)
        self.levels: tuple = tuple(levels)
        self.kappa_slack: float = kappa_slack
        self.kappa_tight: float = kappa_tight
        self.restarts: int = restarts

    def _run_replicate(self, replicate: int, T: int = 500, switching: bool = False, **params: Any) -> dict[str, Any]:
        _, data = PhillipsSvarGenerator.generate(
            seed=self.seed,
            T=T,
            kappa_slack=self.kappa_slack,
            kappa_tight=self.kappa_tight,
            switching=switching,
            replicate=replicate,
        )
        options = EstimationOptions(restarts=self.restarts, seed=self.seed + replicate, compute_covariance=False)
        report = test_hypotheses(ModelSpec(p=2, k=2), data, options)

        row = {}
        for test in report.rows:
            row[f"{test.hypothesis}_statistic"] = test.statistic
            row[f"{test.hypothesis}_p_value"] = test.p_value
            row[f"{test.hypothesis}_df"] = test.df
        return row

    def _summarize(self, run_stats_df: pd.DataFrame) -> pd.DataFrame:
        rows = []
        for (switching, T), group in run_stats_df.groupby(["switching", "T"]):
            for hypothesis in ("no_switching", "linear"):
                p_values = group[f"{hypothesis}_p_value"]
                for level in self.levels:
                    rows.append(
                        {
                            "switching": switching,
                            "T": T,
                            "hypothesis": hypothesis,
                            "level": level,
                            "rejection_rate": float((p_values < level).mean()),
                            "n_replicates": int(len(group)),
                        }
                    )
        return pd.DataFrame(rows)

    def run(self) -> tuple[pd.DataFrame, pd.DataFrame]:
        """
        Run the size and power experiment.

        Returns
        -------
        tuple
            A tuple containing two DataFrames: replicate rows and the rejection-rate summary.
        """
        return super().run_experiment_(switching=("Switching DGP", self.switching_list), T=("Sample size", self.sample_sizes))
