"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when inputs violate a documented precondition."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver fails to reach its tolerance.

    Carries an optional ``trace`` attribute with per-iteration diagnostics.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NumericalError(ConvergenceError):
    """Raised when a linear-algebra step fails (indefinite or singular operator)."""
