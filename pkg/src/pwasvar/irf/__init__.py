"""State-dependent impulse responses and Phillips-curve summaries."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .girf import GirfResult, girf

# noinspection PyUnresolvedReferences
from .phillips import SLACK_ANCHOR, TIGHT_ANCHOR, PartialResiduals, cumulative_multiplier, kinked_slope, phillips_partial_residuals
