"""pwasvar initialization file."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .exceptions import (
    PwaSvarError,
    ModelValidationError,
    ContinuityViolation,
    NotInvertible,
    AmbiguousInverse,
    DimensionTooLarge,
    NotThresholdAffine,
    NoConvergence,
    HistoryLengthMismatch,
    AllStartsFailed,
    DomainError,
    NotNested,
    BoundaryAnchor,
    NotOrthogonal,
    SkedasticNotDiagonalizable,
    NotEquivalent,
    InsufficientProbes,
    WeakInstrument,
    DriverDegenerate,
    ZeroDenominator,
    DataError,
    MissingColumn,
    NonNumericCell,
    NonPositiveForLog,
    SchemaError,
    DegenerateSegment,
)

# noinspection PyUnresolvedReferences
from .pwa import (
    ThresholdPartition,
    ConicPartition,
    PwaMap,
    ContinuityReport,
    InvertibilityCertificate,
    check_invertibility,
    invert,
    find_collision,
    lipschitz_bound,
    lower_lipschitz_estimate,
    SegmentDecomposition,
    segment_decomposition,
)

# noinspection PyUnresolvedReferences
from .smoothing import (
    GaussianKernelSpec,
    SmoothedThresholdMap,
    smooth_threshold_affine,
    invert_smooth,
    smooth_numeric,
    smooth_monte_carlo,
    logistic_transition,
    check_scalar_monotone,
    scan_transition_counterexample,
    transition_panel,
)

# noinspection PyUnresolvedReferences
from .random import substream

# noinspection PyUnresolvedReferences
from .model import SkedasticSpec, PwaSvarModel, SmoothedSvarModel, SimulationResult, simulate, simulate_replicates

# noinspection PyUnresolvedReferences
from .problems import LikelihoodProblem

# noinspection PyUnresolvedReferences
from .algorithms import multistart_optimize

# noinspection PyUnresolvedReferences
from .estimation import (
    ModelSpec,
    param_layout,
    pack,
    unpack,
    log_likelihood,
    linear_var_ml,
    EstimationOptions,
    EstimationResult,
    estimate_ml,
    chi2_sf,
    LRTestResult,
    HypothesisReport,
    lr_test,
    test_hypotheses,
)

# noinspection PyUnresolvedReferences
from .identification import (
    orthogonal_reduced_form,
    rotate_model,
    find_rotation,
    instrument_q1,
    hetero_identification_class,
    scan_admissible_rotations,
)

# noinspection PyUnresolvedReferences
from .irf import GirfResult, girf, cumulative_multiplier, kinked_slope, phillips_partial_residuals

# noinspection PyUnresolvedReferences
from .io import DataTable, load_csv, write_csv, parse_model_config, model_to_config, load_model, load_bundled_model, canonical_json

# noinspection PyUnresolvedReferences
from .generators import PhillipsSvarGenerator, PwaMapGenerator

# noinspection PyUnresolvedReferences
from .runners import RecoveryRunner, LRSizePowerRunner, CertificateAuditRunner

# noinspection PyUnresolvedReferences
from .decorators import short_name, get_short_name
