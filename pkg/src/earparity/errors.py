"""Exception hierarchy shared by every module."""


class EarParityError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EarParityError, ValueError):
    """Malformed graph, matroid or certificate text."""


class PreconditionError(EarParityError, ValueError):
    """An operation was called on an input outside its domain."""


class ScaleBoundExceeded(EarParityError):
    """An exhaustive routine was asked to run above its size limit."""

    def __init__(self, what, size, bound):
        super().__init__(f"{what}: size {size} exceeds scale bound {bound}")
        self.size = size
        self.bound = bound
