"""Exception types shared across the package."""


class AutomataError(Exception):
    """Base class for errors raised by this package."""


class ParseError(AutomataError):
    """Malformed automaton text or JSON, with a best-effort source location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeGuardError(AutomataError):
    """An operation refused an input larger than its configured guard."""


class PreconditionError(AutomataError):
    """The mathematical hypotheses of an operation do not hold for the input."""
