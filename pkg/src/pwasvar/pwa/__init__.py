"""Continuous piecewise-affine maps: partitions, evaluation, continuity, invertibility and segment decomposition."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .partition import ThresholdPartition, ConicPartition

# noinspection PyUnresolvedReferences
from .pwa_map import PwaMap, ContinuityReport, regime_of, evaluate, jacobian_at, validate_continuity

# noinspection PyUnresolvedReferences
from .invertibility import InvertibilityCertificate, check_invertibility, invert, find_collision, lipschitz_bound, lower_lipschitz_estimate

# noinspection PyUnresolvedReferences
from .segment import SegmentDecomposition, segment_decomposition
