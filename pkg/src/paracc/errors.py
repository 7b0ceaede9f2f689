class ParaccError(Exception):
    """Base class for library errors."""


class ParameterError(ParaccError, ValueError):
    """An argument lies outside the operation's parameter domain."""


class GuardError(ParaccError):
    """The instance exceeds an exhaustive-search size guard; no answer is given."""


class GraphParseError(ParaccError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DecompositionError(ParaccError, ValueError):
    """A tree decomposition is not valid for the graph it is used with."""
