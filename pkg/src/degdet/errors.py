"""Exception hierarchy shared by every module of the package."""


class DegDetError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DegDetError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FieldMismatch(DegDetError, ValueError):
    pass


class NotProper(DegDetError, ValueError):
    pass


class SingularInput(DegDetError, ValueError):
    pass


class NonSquare(DegDetError, ValueError):
    pass


class CapExceeded(DegDetError):
    """An enumeration or iteration budget was exhausted."""


class MvspUnresolved(CapExceeded):
    """No exact vanishing-subspace solver could certify an optimum."""


class FieldTooSmall(DegDetError):
    pass


class MoveInfeasible(DegDetError):
    pass


class FeasibilityUnbounded(DegDetError):
    pass


class WrongClass(DegDetError, ValueError):
    pass


class GroundMismatch(DegDetError, ValueError):
    pass


class InconsistentPartition(DegDetError, ValueError):
    pass


class Unbounded(DegDetError):
    """A dual program has no finite optimum (no perfect matching)."""


class InvalidCertificate(DegDetError):
    pass


class BoxTooSmall(DegDetError):
    pass


class NoDescentProgress(DegDetError):
    pass


class SingularSystem(DegDetError):
    pass
