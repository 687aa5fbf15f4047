"""Reproducible random streams for Monte Carlo work."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from .streams import substream, draw_normals
