"""Unit tests for algorithms/multistart.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import logging

import numpy as np
import pytest

from pwasvar.algorithms import multistart_optimize
from pwasvar.decorators import get_short_name
from pwasvar.problems import LikelihoodProblem

TARGET = np.array([1.0, -2.0])


def concave(x: np.ndarray) -> float:
    if x[0] > 10.0:
        return -np.inf
    return -float(np.sum((x - TARGET) ** 2))


class TestMultistartOptimize:
    """Unit tests for multistart_optimize."""

    def test_max(self):
        """The maximizer of a concave quadratic is found from every start."""
        problem = LikelihoodProblem(2, concave)
        best_state, best_fitness, log = multistart_optimize(problem, [np.zeros(2), np.array([5.0, 5.0])])
        np.testing.assert_allclose(best_state, TARGET, atol=1e-5)
        assert best_fitness == pytest.approx(0.0, abs=1e-9)
        assert [r["restart"] for r in log] == [0, 1]

    def test_min(self):
        """Minimization problems report fitness in the objective's own sign."""
        problem = LikelihoodProblem(2, lambda x: float(np.sum((x - TARGET) ** 2)) + 3.0, maximize=False)
        best_state, best_fitness, _ = multistart_optimize(problem, [np.zeros(2)])
        np.testing.assert_allclose(best_state, TARGET, atol=1e-5)
        assert best_fitness == pytest.approx(3.0, abs=1e-9)

    def test_infeasible_start_is_logged(self):
        """Starts with -inf fitness are skipped and recorded."""
        problem = LikelihoodProblem(2, concave)
        _, best_fitness, log = multistart_optimize(problem, [np.array([20.0, 0.0]), np.zeros(2)])
        assert log[0]["message"] == "infeasible start"
        assert np.isfinite(best_fitness)

    def test_infeasible_start_warns(self, caplog):
        """A start ending at -inf is reported at WARNING; feasible starts only at INFO."""
        problem = LikelihoodProblem(2, concave)
        with caplog.at_level(logging.INFO):
            multistart_optimize(problem, [np.array([20.0, 0.0]), np.zeros(2)])
        warnings = [r for r in caplog.records if r.levelno == logging.WARNING]
        assert len(warnings) == 1
        assert "Restart 0 ended at -inf" in warnings[0].getMessage()
        assert any(r.levelno == logging.INFO and r.getMessage().startswith("Restart 1: fitness") for r in caplog.records)

    def test_all_starts_infeasible(self):
        """When no start is feasible the fitness is -inf."""
        problem = LikelihoodProblem(2, concave)
        _, best_fitness, _ = multistart_optimize(problem, [np.array([20.0, 0.0])])
        assert best_fitness == -np.inf

    def test_problem_state_updated(self):
        """The problem holds the winning state afterwards."""
        problem = LikelihoodProblem(2, concave)
        best_state, _, _ = multistart_optimize(problem, [np.zeros(2)])
        np.testing.assert_array_equal(problem.get_state(), best_state)

    def test_requires_start(self):
        """An empty start list is rejected."""
        with pytest.raises(ValueError):
            multistart_optimize(LikelihoodProblem(2, concave), [])

    def test_short_name(self):
        """The optimizer is recorded under its short name."""
        assert get_short_name(multistart_optimize) == "nm_bfgs"
