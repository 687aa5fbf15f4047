"""Exception and warning classes raised throughout pwasvar."""

# Authors: pwasvar contributors
# License: BSD 3-clause


class PwaSvarError(Exception):
    """Base class for all pwasvar errors."""


class ModelValidationError(PwaSvarError, ValueError):
    """A map or model failed structural, continuity or invertibility validation."""


class ContinuityViolation(ModelValidationError):
    """Adjacent regimes of a piecewise-affine map disagree on their common boundary.

    Parameters
    ----------
    regime_pair : tuple[int, int]
        Labels of the two regimes whose continuity condition fails.
    residual : float
        Norm of the violated condition.
    message : str, optional
        Override of the default message.
    """

    def __init__(self, regime_pair: tuple[int, int], residual: float, message: str = None):
        self.regime_pair: tuple[int, int] = tuple(regime_pair)
        self.residual: float = float(residual)
        if message is None:
            message = f"Continuity violated between regimes {self.regime_pair[0]} and {self.regime_pair[1]}: residual {self.residual:.3e}"
        super().__init__(message)


class NotInvertible(ModelValidationError):
    """The determinant condition fails or no regime accepts an inversion target."""


class AmbiguousInverse(PwaSvarError, RuntimeError):
    """More than one regime accepts an inversion target away from the boundaries."""


class DimensionTooLarge(PwaSvarError, ValueError):
    """A 2^p enumeration or a p-dimensional tensor grid exceeds its configured cap."""


class NotThresholdAffine(PwaSvarError, TypeError):
    """A closed-form operation received a map that is not threshold-affine."""


class NoConvergence(PwaSvarError, RuntimeError):
    """An iterative solver hit its iteration cap."""


class HistoryLengthMismatch(PwaSvarError, ValueError):
    """A lag history does not hold exactly k observations."""


class AllStartsFailed(PwaSvarError, RuntimeError):
    """Every optimizer start ended at an infeasible point."""


class DomainError(PwaSvarError, ValueError):
    """An argument lies outside the domain of a function."""


class NotNested(PwaSvarError, ValueError):
    """A restricted model is not nested in the unrestricted one."""


class BoundaryAnchor(PwaSvarError, ValueError):
    """A normalization anchor point lies on a regime boundary."""


class NotOrthogonal(PwaSvarError, ValueError):
    """A matrix expected to be orthogonal is not."""


class SkedasticNotDiagonalizable(PwaSvarError, ValueError):
    """A rotation would make the conditional variance matrix non-diagonal."""


class NotEquivalent(PwaSvarError):
    """Two models are not related by an orthogonal rotation.

    Parameters
    ----------
    max_residual : float
        Largest discrepancy found on the validation set.
    """

    def __init__(self, max_residual: float, message: str = None):
        self.max_residual: float = float(max_residual)
        super().__init__(message or f"Models are not observationally equivalent: max residual {self.max_residual:.3e}")


class InsufficientProbes(PwaSvarError, ValueError):
    """Too few probe points, or probes that miss a regime."""


class WeakInstrument(PwaSvarError, ValueError):
    """The instrument covariance is not distinguishable from zero.

    Parameters
    ----------
    ratio : float
        Norm of the covariance divided by its jackknife standard error.
    """

    def __init__(self, ratio: float, message: str = None):
        self.ratio: float = float(ratio)
        super().__init__(message or f"Weak instrument: covariance norm / jackknife SE = {self.ratio:.3f}")


class DriverDegenerate(PwaSvarError, ZeroDivisionError):
    """The cumulative driver response is numerically zero."""


class ZeroDenominator(PwaSvarError, ZeroDivisionError):
    """A slope denominator is numerically zero."""


class DataError(PwaSvarError, ValueError):
    """Base class for data ingestion errors."""


class MissingColumn(DataError):
    """A mapped column is absent from the header."""


class NonNumericCell(DataError):
    """A mapped cell cannot be parsed as a number."""

    def __init__(self, row: int, col: str, message: str = None):
        self.row: int = row
        self.col: str = col
        super().__init__(message or f"Non-numeric value at row {row}, column '{col}'")


class NonPositiveForLog(DataError):
    """A log transform received a non-positive value."""

    def __init__(self, row: int, col: str, message: str = None):
        self.row: int = row
        self.col: str = col
        super().__init__(message or f"Non-positive value for log transform at row {row}, column '{col}'")


class SchemaError(PwaSvarError, ValueError):
    """A configuration document does not match the schema.

    Parameters
    ----------
    path : str
        JSON path of the offending field, e.g. ``regimes[0].matrix``.
    """

    def __init__(self, path: str, message: str):
        self.path: str = path
        super().__init__(f"{path}: {message}")


class DegenerateSegment(UserWarning):
    """A segment decomposition was requested for coincident endpoints."""
