"""Exception hierarchy shared by all modules.

ValidationError and its subclasses signal bad inputs or unmet hypotheses and
map to CLI exit code 1.  NumericalError signals an internal numerical failure
(non-bracketing bisection, non-convergent iteration) and maps to exit code 2.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition or domain constraint."""


class PreconditionError(ValidationError):
    """A stated hypothesis of an operation is not met."""


class NotApplicableError(ValidationError):
    """The operation's hypothesis excludes this input (e.g. constant profile)."""


class CoplanarError(ValidationError):
    """Raised when a catenoid is requested for coplanar boundary circles."""


class InsufficientMeshError(ValidationError):
    """The requested number of eigenvalues exceeds what the mesh resolves."""


class NumericalError(RuntimeError):
    """An internal numerical procedure failed to converge or certify."""

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = dict(context or {})
