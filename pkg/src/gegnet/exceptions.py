"""Exception hierarchy.

Three families matter to callers: parameter errors (bad hyper-parameters or
configuration), data errors (malformed or inconsistent inputs), and numeric
errors (factorization/conditioning failures). The CLI maps them to distinct
exit codes.
"""


class GegnetError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(GegnetError, ValueError):
    """A hyper-parameter or option is outside its valid range."""


class DegreeTooLargeError(InvalidParameterError):
    """Polynomial degree exceeds the closed-form evaluation guard."""


class InsufficientQuadratureError(InvalidParameterError):
    """Too few quadrature points for exact integration of the product."""


class DataError(GegnetError, ValueError):
    """Input data is malformed or inconsistent."""


class ShapeError(DataError):
    """Array dimensions do not match the expected shape."""


class NormalizationViolationError(DataError):
    """A feature value lies outside the required [0, 1] domain."""


class LabelError(DataError):
    """A label is unknown to the codec, or too few classes are present."""


class ParseError(DataError):
    """A data file could not be parsed."""


class StratificationError(DataError):
    """A class has too few samples for the requested stratified split."""


class NumericError(GegnetError, RuntimeError):
    """A numerical computation failed."""


class DegenerateMatrixError(NumericError):
    """The activation matrix is degenerate (e.g. all zeros)."""


class ConditioningError(NumericError):
    """A symmetric factorization failed; the system is not numerically SPD."""
