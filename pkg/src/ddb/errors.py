"""Exception hierarchy shared by every module of the package."""


class DDBError(Exception):
    """Base class for all errors raised by :mod:`ddb`."""


class MalformedInputError(DDBError, ValueError):
    """A word, presentation or homomorphism refers to things that do not exist."""


class PresentationSyntaxError(MalformedInputError):
    """Raised by the presentation parser; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class InvalidEliminationError(DDBError, ValueError):
    pass


class IncompleteTableError(DDBError):
    """An operation needed a closed coset table but enumeration hit its limit."""


class ElementCapExceeded(DDBError):
    pass


class DescriptorError(DDBError, ValueError):
    pass


class DiscriminantMismatch(DDBError, ValueError):
    pass


class InadmissibleSideError(DDBError, ValueError):
    pass


class VerificationFailed(DDBError):
    """A certificate check came out false. This would contradict a proved result."""
