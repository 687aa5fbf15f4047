"""Unit tests for problems/likelihood_problem.py"""

# Authors: pwasvar contributors
# License: BSD 3-clause

import numpy as np
import pytest

from pwasvar.problems import LikelihoodProblem


def quadratic(x: np.ndarray) -> float:
    return float(np.sum((x - 1.0) ** 2))


class TestLikelihoodProblem:
    """Tests for LikelihoodProblem class."""

    def test_set_state_max(self):
        """Test set_state method for a maximization problem"""
        problem = LikelihoodProblem(3, quadratic)
        x = np.array([0.0, 1.0, 3.0])
        problem.set_state(x)
        assert np.array_equal(problem.get_state(), x) and problem.get_fitness() == 5.0

    def test_set_state_min(self):
        """Test set_state method for a minimization problem"""
        problem = LikelihoodProblem(3, quadratic, maximize=False)
        x = np.array([0.0, 1.0, 3.0])
        problem.set_state(x)
        assert problem.get_fitness() == -5.0
        assert problem.get_adjusted_fitness() == 5.0
        assert problem.loss(x) == 5.0

    def test_nan_is_infeasible(self):
        """NaN objective values count as -inf fitness."""
        problem = LikelihoodProblem(2, lambda x: np.nan)
        assert problem.eval_fitness(np.zeros(2)) == -np.inf
        assert problem.loss(np.zeros(2)) == np.inf

    def test_evaluation_counter(self):
        """Evaluations are counted and reset."""
        problem = LikelihoodProblem(2, quadratic)
        problem.eval_fitness(np.zeros(2))
        problem.eval_fitness(np.ones(2))
        assert problem.fitness_evaluations == 2
        problem.reset(np.zeros(2))
        assert problem.fitness_evaluations == 0
        assert problem.get_fitness() == 2.0

    def test_wrong_length(self):
        """States must match the problem length."""
        problem = LikelihoodProblem(2, quadratic)
        with pytest.raises(ValueError):
            problem.eval_fitness(np.zeros(3))
        with pytest.raises(ValueError):
            problem.set_state(np.zeros(1))

    def test_invalid_construction(self):
        """The length must be positive and the objective callable."""
        with pytest.raises(ValueError):
            LikelihoodProblem(0, quadratic)
        with pytest.raises(TypeError):
            LikelihoodProblem(2, "not callable")
