from __future__ import annotations


class SeidelError(Exception):
    """Base class for errors raised by this package."""


class NotApplicable(SeidelError):
    """The operation's hypotheses do not apply to this input (not a failure verdict)."""


class PreconditionError(SeidelError, ValueError):
    """An input violates a documented precondition."""


class BudgetExceeded(SeidelError):
    """An exhaustive search was cut off before covering its whole space."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class NotPSDError(SeidelError, ValueError):
    """A structural consequence of positive semidefiniteness failed, so the input is not PSD."""


class ParseError(SeidelError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column
