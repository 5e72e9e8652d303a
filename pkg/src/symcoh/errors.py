"""Exception hierarchy shared by the library and the CLI."""


class SymcohError(Exception):
    """Base class for every error raised by symcoh."""


class ValidationError(SymcohError, ValueError):
    """Input data violates a structural axiom.

    ``path`` locates the offending entry inside an input document (when the
    data came from one) and ``witness`` carries the elements exhibiting the
    violation.
    """

    def __init__(self, message, *, path=None, witness=None):
        self.path = path
        self.witness = witness
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class SizeGuardError(SymcohError):
    """A computation would exceed the configured coordinate budget."""


class InternalInconsistency(SymcohError):
    """A postcondition that the mathematics guarantees has failed."""


class BudgetExceeded(SymcohError):
    """An enumeration or search ran out of its node/state budget."""


class TwoTorsionError(ValidationError):
    """The group has an element of order two where none is allowed."""
