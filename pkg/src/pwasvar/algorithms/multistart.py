"""Multi-start local optimization: Nelder-Mead simplex refined by quasi-Newton with numerical gradients."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging
from typing import Any

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import minimize

from pwasvar.decorators import short_name
from pwasvar.problems import LikelihoodProblem


def _local_search(problem: LikelihoodProblem, start: np.ndarray, index: int, max_iters: int, tol: float) -> dict[str, Any]:
    """Run one start; returns a record with the end state and its fitness."""
    problem.reset()
    start = np.asarray(start, dtype=float)
    start_fitness = problem.eval_fitness(start)
    record = {
        "restart": index,
        "start_fitness": problem.get_maximize() * start_fitness,
        "state": start.copy(),
        "fitness": start_fitness,
        "converged": False,
        "nm_iterations": 0,
        "bfgs_iterations": 0,
        "message": "",
    }
    if not np.isfinite(start_fitness):
        record["message"] = "infeasible start"
        return record

    with np.errstate(all="ignore"):
        nm = minimize(
            problem.loss,
            start,
            method="Nelder-Mead",
            options={"maxiter": max_iters, "maxfev": 4 * max_iters, "xatol": tol, "fatol": tol, "adaptive": True},
        )
    state, fitness = nm.x, -float(nm.fun)
    record.update(nm_iterations=int(nm.nit), converged=bool(nm.success), message=str(nm.message))

    if np.isfinite(fitness):
        try:
            with np.errstate(all="ignore"):
                qn = minimize(problem.loss, state, method="BFGS", options={"maxiter": max_iters, "gtol": max(tol, 1e-6)})
            record["bfgs_iterations"] = int(qn.nit)
            if np.isfinite(qn.fun) and -float(qn.fun) >= fitness:
                state, fitness = qn.x, -float(qn.fun)
                record.update(converged=bool(qn.success) or record["converged"], message=str(qn.message))
        except (ValueError, np.linalg.LinAlgError, FloatingPointError) as err:
            logging.debug(f"Restart {index}: quasi-Newton refinement failed ({err}); keeping the simplex optimum")

    record.update(state=np.asarray(state, dtype=float), fitness=fitness, fitness_evaluations=problem.fitness_evaluations)
    return record


@short_name("nm_bfgs")
def multistart_optimize(
    problem: LikelihoodProblem, starts: list[np.ndarray], max_iters: int = 5000, tol: float = 1e-8, n_jobs: int = 1
) -> tuple[np.ndarray, float, list[dict[str, Any]]]:
    """Maximize the problem's fitness from several starting points.

    Each start runs an adaptive Nelder-Mead simplex search followed by BFGS with finite-difference
    gradients; the refinement is kept only if it does not lower the fitness. Starts are independent and
    may run in parallel; the winner is the highest fitness, ties going to the lowest start index.

    Parameters
    ----------
    problem : LikelihoodProblem
        Problem to optimize.
    starts : list[np.ndarray]
        Starting states.
    max_iters : int, default=5000
        Iteration cap of each local method.
    tol : float, default=1e-8
        Simplex tolerance on parameters and fitness.
    n_jobs : int, default=1
        joblib workers.

    Returns
    -------
    best_state : np.ndarray
        State with the highest fitness.
    best_fitness : float
        Fitness at `best_state`, in the objective's original sign; ``-inf`` if every start failed.
    restart_log : list[dict]
        One record per start, in start order.
    """
    if not starts:
        raise ValueError("At least one start is required.")

    records = Parallel(n_jobs=n_jobs)(delayed(_local_search)(problem, s, i, max_iters, tol) for i, s in enumerate(starts))

    best_fitness = -np.inf
    best_state = np.asarray(starts[0], dtype=float)
    for record in records:
        if not np.isfinite(record["fitness"]):
            logging.warning(f"Restart {record['restart']} ended at -inf fitness ({record['message']}); start discarded")
            continue
        logging.info(f"Restart {record['restart']}: fitness {problem.get_maximize() * record['fitness']:.6f} ({record['message']})")
        if record["fitness"] > best_fitness:
            best_fitness = record["fitness"]
            best_state = record["state"]

    problem.fitness_evaluations = sum(r.get("fitness_evaluations", 1) for r in records)
    if np.isfinite(best_fitness):
        problem.state = np.asarray(best_state, dtype=float).copy()
        problem.fitness = best_fitness

    return best_state, problem.get_maximize() * best_fitness, records
