"""Exception hierarchy shared by all modules.

Two top-level families matter to callers: ``ValidationError`` for rejected
input (CLI exit code 1) and ``InconsistencyError`` for a detected
mathematical inconsistency such as a failed exact division or a route
disagreement (CLI exit code 2).
"""


class LogmcError(Exception):
    pass


class ValidationError(LogmcError):
    """The input violates a documented invariant or precondition."""


class NonIsolatedSingularityError(ValidationError):
    """Colength computation did not stabilise: the singularity is not isolated."""


class BranchCountRequiredError(ValidationError):
    """The local equation is outside the families with a rigorous branch count."""


class InconsistencyError(LogmcError):
    """A mathematical identity that must hold on valid input failed.

    ``details`` optionally carries a structured diagnostic payload.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details


class DivisionRemainderError(InconsistencyError):
    """An exact division left a nonzero remainder; ``remainder`` is attached."""

    def __init__(self, message, remainder):
        super().__init__(message, details={"remainder": repr(remainder)})
        self.remainder = remainder
