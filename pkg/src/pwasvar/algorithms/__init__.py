"""Optimization algorithms used for maximum-likelihood estimation."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .multistart import multistart_optimize
