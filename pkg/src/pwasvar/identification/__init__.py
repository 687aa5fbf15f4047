"""Rotation layer: orthogonal normalization, observational equivalence, instruments and heteroskedasticity."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .rotation import (
    RotationNormalization,
    ql_factor,
    orthogonal_reduced_form,
    rotation_normalization,
    check_orthogonal,
    rotate_model,
    probe_points,
    find_rotation,
)

# noinspection PyUnresolvedReferences
from .instruments import InstrumentResult, instrument_q1

# noinspection PyUnresolvedReferences
from .heteroskedasticity import (
    HeteroClass,
    hetero_identification_class,
    is_diagonalizing_rotation,
    scan_admissible_rotations,
    is_signed_permutation,
)
