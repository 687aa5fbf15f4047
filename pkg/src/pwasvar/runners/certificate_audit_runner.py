"""
Class for auditing the invertibility certificate against a sampling oracle on random piecewise-affine maps.

Example usage:

    runner = CertificateAuditRunner(experiment_name='certificate_audit',
                                    output_directory=OUTPUT_DIRECTORY,
                                    seed=SEED,
                                    n_replicates=50,
                                    families=['threshold:2', 'threshold:3', 'conic'],
                                    dimensions=[2, 3])

    df_run_stats, df_summary = runner.run()
"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import time
from typing import Any

import numpy as np
import pandas as pd

from pwasvar.decorators import short_name
from pwasvar.generators import PwaMapGenerator
from pwasvar.pwa import PwaMap, check_invertibility, find_collision, invert
from pwasvar.random import substream
from pwasvar.runners._runner_base import _RunnerBase


def preimage_counts(pwa_map: PwaMap, w: np.ndarray, det_tol: float = 1e-12) -> np.ndarray:
    """Number of regimes whose affine piece solves ``f(z) = w`` inside the regime, per row of `w`.

    A map is a bijection iff every count is one; for generic targets the counts do not depend on
    boundary ties.
    """
    w = np.atleast_2d(np.asarray(w, dtype=float))
    counts = np.zeros(w.shape[0], dtype=int)
    for ell in range(1, pwa_map.n_regimes + 1):
        matrix = pwa_map.matrices[ell - 1]
        if abs(np.linalg.det(matrix)) <= det_tol:
            continue
        x = np.linalg.solve(matrix, (w - pwa_map.intercepts[ell - 1]).T).T
        counts += np.atleast_1d(pwa_map.regime_of(x)) == ell
    return counts


@short_name("certificate_audit")
class CertificateAuditRunner(_RunnerBase):
    """
    A runner comparing the determinant-condition verdict with sampled injectivity and surjectivity.

    For every random map the oracle counts preimages of random targets; it calls a map invertible iff
    every count is one. Certified maps additionally record the round-trip error of
    :func:`~pwasvar.pwa.invert` and rejected maps record whether :func:`~pwasvar.pwa.find_collision`
    produced a valid witness.

    Attributes
    ----------
    families : list[str]
        ``"threshold:<L>"`` for L-regime threshold maps or ``"conic"``.
    dimensions : list[int]
        Dimensions p.
    n_targets : int
        Random targets per map.
    step_scale : float
        Step size of the threshold generator.
    """

    def __init__(
        self,
        experiment_name: str,
        seed: int,
        n_replicates: int,
        families: list[str] = ("threshold:2", "threshold:3"),
        dimensions: list[int] = (2, 3),
        n_targets: int = 2000,
        step_scale: float = 1.0,
        output_directory: str = None,
        n_jobs: int = 1,
        **kwargs: Any,
    ):
        """
        Initialize the CertificateAuditRunner.

        Parameters
        ----------
        experiment_name : str
            Name of the experiment.
        seed : int
            Random seed for reproducibility.
        n_replicates : int
            Random maps per grid point.
        families : list of str, optional
            Map families, default two- and three-regime threshold maps.
        dimensions : list of int, optional, default=(2, 3)
            Dimensions to test.
        n_targets : int, optional, default=2000
            Random targets per map for the oracle.
        step_scale : float, optional, default=1.0
            Step size of the threshold generator.
        output_directory : str, optional
            Directory to save experiment results, default=None.
        n_jobs : int, optional, default=1
            joblib workers across replicates.
        """
        for family in families:
            _parse_family(family)
        super().__init__(
            experiment_name=experiment_name,
            seed=seed,
            n_replicates=n_replicates,
            output_directory=output_directory,
            n_jobs=n_jobs,
            **kwargs,
        )
        self.families: list[str] = list(families)
        self.dimensions: list[int] = list(dimensions)
        self.n_targets: int = n_targets
        self.step_scale: float = step_scale

    def _generate(self, family: str, p: int, replicate: int) -> PwaMap:
        kind, n_regimes = _parse_family(family)
        seed = self.seed * 1000 + replicate
        if kind == "conic":
            return PwaMapGenerator.generate_conic(seed=seed, p=p)
        return PwaMapGenerator.generate_threshold(seed=seed, p=p, n_regimes=n_regimes, step_scale=self.step_scale)

    def _run_replicate(self, replicate: int, family: str = "threshold:2", p: int = 2, **params: Any) -> dict[str, Any]:
        pwa_map = self._generate(family, p, replicate)

        start = time.perf_counter()
        cert = check_invertibility(pwa_map)
        cert_seconds = time.perf_counter() - start

        rng = substream(self.seed, 1, replicate)
        targets = 3.0 * rng.standard_normal((self.n_targets, p))
        counts = preimage_counts(pwa_map, targets)
        oracle = bool(np.all(counts == 1))

        row = {
            "n_regimes": pwa_map.n_regimes,
            "certified": cert.invertible,
            "oracle": oracle,
            "agree": cert.invertible == oracle,
            "min_preimages": int(counts.min()),
            "max_preimages": int(counts.max()),
            "cert_seconds": cert_seconds,
            "roundtrip_error": np.nan,
            "collision_found": np.nan,
        }

        if cert.invertible:
            x = 3.0 * rng.standard_normal((self.n_targets, p))
            row["roundtrip_error"] = float(np.max(np.abs(invert(pwa_map, pwa_map.evaluate(x)) - x)))
        else:
            witness = find_collision(pwa_map)
            if witness is not None:
                x, x_prime = witness
                gap = np.max(np.abs(pwa_map.evaluate(x) - pwa_map.evaluate(x_prime)))
                row["collision_found"] = bool(gap <= 1e-8 * max(1.0, np.max(np.abs(pwa_map.evaluate(x)))) and not np.allclose(x, x_prime))
            else:
                row["collision_found"] = False
        return row

    def _summarize(self, run_stats_df: pd.DataFrame) -> pd.DataFrame:
        rows = []
        for (family, p), group in run_stats_df.groupby(["family", "p"]):
            rejected = group[~group["certified"].astype(bool)]
            rows.append(
                {
                    "family": family,
                    "p": p,
                    "n_maps": int(len(group)),
                    "n_certified": int(group["certified"].sum()),
                    "agreement": float(group["agree"].mean()),
                    "max_roundtrip_error": float(group["roundtrip_error"].max()) if group["certified"].any() else np.nan,
                    "collision_rate": float(rejected["collision_found"].astype(float).mean()) if len(rejected) else np.nan,
                    "cert_seconds": float(group["cert_seconds"].sum()),
                }
            )
        return pd.DataFrame(rows)

    def run(self) -> tuple[pd.DataFrame, pd.DataFrame]:
        """
        Run the certificate audit.

        Returns
        -------
        tuple
            A tuple containing two DataFrames: per-map rows and the per-family agreement summary.
        """
        return super().run_experiment_(family=("Map family", self.families), p=("Dimension", self.dimensions))


def _parse_family(family: str) -> tuple[str, int | None]:
    if family == "conic":
        return "conic", None
    kind, _, n = family.partition(":")
    if kind != "threshold" or not n.isdigit() or int(n) < 1:
        raise ValueError(f"family must be 'conic' or 'threshold:<L>'. Got {family!r}")
    return kind, int(n)
