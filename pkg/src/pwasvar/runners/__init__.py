"""Classes for running Monte Carlo experiments: estimator recovery, LR test size and power, certificate audits."""

# Authors: pwasvar contributors
# License: BSD 3-clause

# noinspection PyUnresolvedReferences
from .recovery_runner import RecoveryRunner

# noinspection PyUnresolvedReferences
from .lr_size_power_runner import LRSizePowerRunner

# noinspection PyUnresolvedReferences
from .certificate_audit_runner import CertificateAuditRunner, preimage_counts

# noinspection PyUnresolvedReferences
from ._runner_base import _RunnerBase
