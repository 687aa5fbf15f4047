"""Base class for Monte Carlo experiments over replicated samples, including parallel replicates, logging and result saving."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import itertools
import logging
import os
import time
from abc import ABC, abstractmethod
from typing import Any

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from pwasvar.decorators import get_short_name
from pwasvar.io.utils import build_artifact_path


class _RunnerBase(ABC):
    """
    Abstract base class for running and managing Monte Carlo experiments.

    A run takes the Cartesian product of the parameter grids passed to :meth:`run_experiment_`, runs
    `n_replicates` independent replicates for every grid point and collects one row per replicate in
    :attr:`run_stats_df`. Subclasses implement :meth:`_run_replicate` (one row) and :meth:`_summarize`
    (the per-grid-point verdict table, :attr:`summary_df`). Replicate ``r`` draws from substream ``r``
    of the runner seed, so results do not depend on `n_jobs`.

    Attributes
    ----------
    run_stats_df : pd.DataFrame | None
        One row per (grid point, replicate).
    summary_df : pd.DataFrame | None
        One row per grid point.
    parameter_description_dict : dict[str, str]
        Grid parameter name to its column description.
    """

    def __init__(
        self,
        experiment_name: str,
        seed: int,
        n_replicates: int,
        output_directory: str = None,
        n_jobs: int = 1,
        **kwargs: Any,
    ):
        """
        Initialize the runner with the replicate count and output settings.

        Parameters
        ----------
        experiment_name : str
            The name of the experiment.
        seed : int
            Master seed; replicate ``r`` uses substream ``r``.
        n_replicates : int
            Replicates per grid point.
        output_directory : str, optional
            Directory to save experiment results, default=None (nothing is written).
        n_jobs : int, optional, default=1
            joblib workers across replicates.
        **kwargs : Any
            Extra arguments forwarded to every :meth:`_run_replicate` call.
        """
        if not isinstance(n_replicates, int) or n_replicates < 1:
            raise ValueError(f"n_replicates must be a positive integer. Got {n_replicates}")

        self.seed: int = seed
        self.n_replicates: int = n_replicates
        self.n_jobs: int = n_jobs
        self.parameter_description_dict: dict[str, str] = {}

        self.run_stats_df: pd.DataFrame | None = None
        self.summary_df: pd.DataFrame | None = None
        self._raw_run_stats: list[dict[str, Any]] = []
        self._extra_args: dict[str, Any] = kwargs
        self._output_directory: str | None = output_directory
        self._dynamic_short_name: str | None = None
        self._experiment_name: str = experiment_name

    @classmethod
    def runner_name(cls) -> str:
        """Get a short name for the runner class."""
        return get_short_name(cls)

    def dynamic_runner_name(self) -> str:
        """Get the dynamic name of the runner, if set, otherwise return the default runner name."""
        dynamic_runner_name = self._dynamic_short_name or self.runner_name()

        if not dynamic_runner_name:
            raise ValueError("dynamic_runner_name is None")

        return dynamic_runner_name

    def _set_dynamic_runner_name(self, name: str):
        """Set a dynamic runner name."""
        self._dynamic_short_name = name

    @staticmethod
    def _print_banner(text: str):
        """Print a formatted banner for logging."""
        logging.info("*" * len(text))
        logging.info(text)
        logging.info("*" * len(text))

    @staticmethod
    def _sanitize_value(value):
        """Sanitize a value for logging, handling different types appropriately."""
        if isinstance(value, (tuple, list)):
            sanitized_value = str(value)
        elif isinstance(value, np.ndarray):
            sanitized_value = str(list(value))
        elif isinstance(value, (bool, int, float, str, np.number)):
            sanitized_value = value
        else:
            sanitized_value = get_short_name(value)

        return sanitized_value

    @abstractmethod
    def run(self):
        """Abstract method to be implemented by subclasses."""
        pass

    @abstractmethod
    def _run_replicate(self, replicate: int, **params: Any) -> dict[str, Any]:
        """Run one replicate at one grid point and return its row."""
        pass

    @abstractmethod
    def _summarize(self, run_stats_df: pd.DataFrame) -> pd.DataFrame:
        """Reduce the replicate rows to one verdict row per grid point."""
        pass

    def _setup(self):
        """Prepare the runner by clearing stats and creating the output directory."""
        self._raw_run_stats = []
        self.run_stats_df = None
        self.summary_df = None

        if self._output_directory is not None and not os.path.exists(self._output_directory):
            os.makedirs(self._output_directory)

    def run_experiment_(self, **kwargs: Any) -> tuple[pd.DataFrame, pd.DataFrame]:
        """
        Execute the experiment over the grid of parameter values and save the results.

        Parameters
        ----------
        **kwargs : Any
            Grid parameters as ``name=(description, values)``; a None value list drops the parameter.

        Returns
        -------
        tuple[pd.DataFrame, pd.DataFrame]
            The replicate rows and the summary rows.
        """
        self._setup()

        # Generate all combinations of parameter values for the experiment
        values = [([(k, v) for v in vs]) for (k, (n, vs)) in kwargs.items() if vs is not None]

        self.parameter_description_dict = {k: n for (k, (n, vs)) in kwargs.items() if vs is not None}

        value_sets = list(itertools.product(*values))

        logging.info(f"Running {self.dynamic_runner_name()}")
        run_start = time.perf_counter()

        for value_set in value_sets:
            self._run_one_experiment(dict(value_set))

        run_end = time.perf_counter()
        logging.info(f"Run time: {run_end - run_start:.2f} seconds")

        self._create_and_save_run_data_frames()
        return self.run_stats_df, self.summary_df

    def _run_one_experiment(self, params: dict[str, Any]):
        """
        Execute every replicate of one grid point.

        Parameters
        ----------
        params : dict[str, Any]
            The grid values of this point.
        """
        total_args = dict(self._extra_args)
        total_args.update(params)
        self._print_banner(f"*** {self.dynamic_runner_name()} {', '.join(f'{k}={self._sanitize_value(v)}' for k, v in params.items())} ***")

        start = time.perf_counter()
        rows = Parallel(n_jobs=self.n_jobs)(delayed(self._run_replicate)(r, **total_args) for r in range(self.n_replicates))
        elapsed = time.perf_counter() - start

        for r, row in enumerate(rows):
            record = {k: self._sanitize_value(v) for k, v in params.items()}
            record["replicate"] = r
            record.update(row)
            self._raw_run_stats.append(record)
        logging.info(f"{self.n_replicates} replicates done in {elapsed:.2f} seconds")

    def _create_and_save_run_data_frames(self, extra_data_frames: dict[str, pd.DataFrame] = None):
        """
        Build the result DataFrames and save them to disk.

        Parameters
        ----------
        extra_data_frames : dict[str, pd.DataFrame], optional
            Additional DataFrames to save.
        """
        self.run_stats_df = pd.DataFrame(self._raw_run_stats)
        self.summary_df = self._summarize(self.run_stats_df) if not self.run_stats_df.empty else pd.DataFrame()

        if self._output_directory:
            if not self.run_stats_df.empty:
                self._dump_df_to_disk(self.run_stats_df, df_name="run_stats_df")

            if not self.summary_df.empty:
                self._dump_df_to_disk(self.summary_df, df_name="summary_df")

            if isinstance(extra_data_frames, dict):
                for name, df in extra_data_frames.items():
                    self._dump_df_to_disk(df, df_name=name)

    def _dump_df_to_disk(self, df: pd.DataFrame, df_name: str) -> str | None:
        """
        Save the DataFrame to disk as a CSV file.

        Parameters
        ----------
        df : pd.DataFrame
            The DataFrame to save.
        df_name : str
            The name of the DataFrame.

        Returns
        -------
        str | None
            The path written, or None if no directory is provided.
        """
        if self._output_directory is None:
            return None

        path = build_artifact_path(
            output_directory=self._output_directory,
            runner_name=self.dynamic_runner_name(),
            experiment_name=self._experiment_name,
            name=df_name,
            ext=".csv",
        )
        df.to_csv(path, index=False)
        logging.info(f"Saved: [{path}]")
        return path
