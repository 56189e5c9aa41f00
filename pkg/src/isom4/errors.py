"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when arguments fail structural validation."""


class InvalidParametersError(InvalidInputError):
    """Raised when numeric parameters are out of the supported range."""


class BudgetError(RuntimeError):
    """Raised when a computation exceeds its configured size budget."""


class UnsupportedCaseError(RuntimeError):
    """Raised for inputs that are well-formed but outside the scope
    of the implemented construction."""
