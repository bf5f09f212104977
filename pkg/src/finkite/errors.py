"""Exception types shared across the package."""


class FinkiteError(ValueError):
    """Base class for all structural errors raised by this package."""


class SchemaError(FinkiteError):
    """Malformed input file; the message points at the offending field."""


class DomainMismatch(FinkiteError):
    pass


class InvalidSplitting(FinkiteError):
    pass


class CompatibilityViolation(FinkiteError):
    pass


class HypothesisViolation(FinkiteError):
    pass


class IllTyped(FinkiteError):
    pass


class NonCommutingSquare(FinkiteError):
    pass


class MissingOperation(FinkiteError):
    pass


class NoSolution(FinkiteError):
    pass


class MultipleSolutions(FinkiteError):
    pass


class NotAHomomorphism(FinkiteError):
    pass


class UnsupportedVariety(FinkiteError):
    pass


class BudgetExceeded(FinkiteError):
    """Raised when an enumeration hits its budget.  Carries partial results."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
