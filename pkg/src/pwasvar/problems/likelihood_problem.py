"""Class defining a continuous parameter-space optimization problem around a log-likelihood."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from typing import Callable

import numpy as np


class LikelihoodProblem:
    """Optimization problem over a flat real parameter vector.

    Parameters
    ----------
    length : int
        Number of parameters.
    fitness_fn : Callable[[np.ndarray], float]
        Objective, typically a log-likelihood; may return ``-inf`` at infeasible points.
    maximize : bool, default=True
        Whether to maximize `fitness_fn`. Set False for minimization.

    Attributes
    ----------
    state : np.ndarray
        Current parameter vector.
    fitness : float
        Objective at `state` (with the maximization factor applied).
    maximize : float
        1.0 for maximization, -1.0 for minimization.
    fitness_evaluations : int
        Counter of objective evaluations.
    """

    def __init__(self, length: int, fitness_fn: Callable, maximize: bool = True):
        if not isinstance(length, (int, np.integer)) or length < 1:
            raise ValueError(f"length must be a positive integer. Got {length}")
        if not callable(fitness_fn):
            raise TypeError("fitness_fn must be callable.")

        self.length: int = int(length)
        self.fitness_fn: Callable = fitness_fn
        self.maximize: float = 1.0 if maximize else -1.0
        self.state: np.ndarray = np.zeros(self.length)
        self.fitness: float = -np.inf
        self.fitness_evaluations: int = 0

    def eval_fitness(self, state: np.ndarray) -> float:
        """Evaluate the (sign-adjusted) objective at `state`.

        Raises
        ------
        ValueError
            If `state` has the wrong length.
        """
        state = np.asarray(state, dtype=float)
        if state.shape != (self.length,):
            raise ValueError(f"State length {state.size} must match problem length {self.length}")

        value = float(self.fitness_fn(state))
        self.fitness_evaluations += 1
        if np.isnan(value):
            return -np.inf
        return self.maximize * value

    def loss(self, state: np.ndarray) -> float:
        """Quantity to minimize: ``-eval_fitness(state)``, with ``+inf`` at infeasible points."""
        return -self.eval_fitness(state)

    def set_state(self, new_state: np.ndarray) -> None:
        """Set the current state and re-evaluate its fitness."""
        new_state = np.asarray(new_state, dtype=float)
        if new_state.shape != (self.length,):
            raise ValueError(f"new_state length {new_state.size} must match problem length {self.length}")
        self.state = new_state.copy()
        self.fitness = self.eval_fitness(self.state)

    def get_state(self) -> np.ndarray:
        return self.state.copy()

    def get_fitness(self) -> float:
        return self.fitness

    def get_adjusted_fitness(self) -> float:
        """Objective at the current state in its original sign."""
        return self.maximize * self.fitness

    def get_maximize(self) -> float:
        return self.maximize

    def reset(self, init_state: np.ndarray = None) -> None:
        """Reset the evaluation counter and optionally the state."""
        self.fitness_evaluations = 0
        if init_state is not None:
            self.set_state(init_state)
            self.fitness_evaluations = 0
