"""Exception hierarchy shared by every module."""


class SamuelError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(SamuelError):
    pass


class ParseError(SamuelError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PresentationError(SamuelError):
    """The presentation violates a precondition (origin not on it, non-reduced, ...)."""


class CapExceededError(SamuelError):
    pass


class NotTransversalError(SamuelError):
    pass


class SearchExhaustedError(SamuelError):
    def __init__(self, message, tried):
        self.tried = tried
        super().__init__(f"{message} ({tried} candidate changes enumerated)")


class InternalError(SamuelError):
    """A post-condition that the theory guarantees was violated."""
