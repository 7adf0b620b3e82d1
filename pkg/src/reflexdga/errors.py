"""Exception hierarchy; the CLI maps each family to its own exit status."""


class ReflexError(Exception):
    """Base class for errors raised by this package."""


class ParseError(ReflexError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PreconditionError(ReflexError):
    """An operation was called on input outside its domain."""


class InvariantViolation(ReflexError):
    """An internal consistency check failed (d^2 != 0, a bad quotient, ...)."""


class NotAComplexError(InvariantViolation):
    pass


class WindowError(PreconditionError):
    """The truncation leaves no degree in which results are exact."""
