"""Exception types shared across the package."""


class OssermanError(Exception):
    """Base class for all package errors."""


class ValidationError(OssermanError):
    """Input violates a documented precondition or structural invariant."""


class ConvergenceError(OssermanError):
    """Iterative solver failed to reach its tolerance.

    Carries the residual that was achieved so callers can report it.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DegeneracyError(OssermanError):
    """A construction is undefined for the given data (coincident eigenvalues etc.)."""


class ReconstructionError(OssermanError):
    """The common +1 eigenspace needed for the octonion identification is missing."""
