"""Kernel smoothing of piecewise-affine maps and smooth-transition counterexamples."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .gaussian_kernel import GaussianKernelSpec

# noinspection PyUnresolvedReferences
from .smoothed_threshold import SmoothedThresholdMap, smooth_threshold_affine, invert_smooth

# noinspection PyUnresolvedReferences
from .numeric import smooth_numeric, smooth_monte_carlo

# noinspection PyUnresolvedReferences
from .logistic import (
    LogisticTransitionMap,
    logistic_transition,
    MonotonicityReport,
    check_scalar_monotone,
    TransitionCounterexample,
    scan_transition_counterexample,
    transition_panel,
)
