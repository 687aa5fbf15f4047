"""Classes for generating calibrated models and random piecewise-affine maps."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .phillips_generator import PhillipsSvarGenerator

# noinspection PyUnresolvedReferences
from .pwa_map_generator import PwaMapGenerator
