"""Maximum-likelihood estimation and likelihood-ratio tests of threshold piecewise-affine SVARs."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .model_spec import ModelSpec

# noinspection PyUnresolvedReferences
from .param_vector import ParamLayout, param_layout, pack, unpack, normalize_signs

# noinspection PyUnresolvedReferences
from .likelihood import log_likelihood, LinearVarFit, linear_var_ml

# noinspection PyUnresolvedReferences
from .estimator import EstimationOptions, EstimationResult, estimate_ml, numerical_covariance

# noinspection PyUnresolvedReferences
from .lr_tests import chi2_sf, LRTestResult, HypothesisReport, lr_test, test_hypotheses
