"""The piecewise-affine SVAR: skedastic functions, conditional density, structural solve and simulation."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .skedastic import SkedasticSpec

# noinspection PyUnresolvedReferences
from .svar_model import PwaSvarModel, SmoothedSvarModel, lag_histories, rhs_mean, solve_step, conditional_log_density

# noinspection PyUnresolvedReferences
from .simulation import SimulationResult, simulate, simulate_replicates
