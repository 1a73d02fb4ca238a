"""Exception hierarchy shared by every layer of the package."""


class TraceIdealError(Exception):
    """Base class for all package errors."""


class StructuralError(TraceIdealError, ValueError):
    """Mismatched rings, wrong shapes, malformed arguments."""


class PreconditionError(TraceIdealError):
    """A mathematical precondition of an operation does not hold."""


class NotArtinianLocal(PreconditionError):
    """The quotient ring is not Artinian local."""


class UnsupportedFamily(PreconditionError):
    """The requested enumeration is not available for this ring."""
