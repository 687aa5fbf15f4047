"""Optimization problem objects."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .likelihood_problem import LikelihoodProblem
