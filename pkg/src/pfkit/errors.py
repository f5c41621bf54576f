"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph data or an operation applied outside its preconditions."""


class FormatError(ValueError):
    """Malformed graph or orientation text."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of budget before reaching a conclusion."""


class InternalCheckError(AssertionError):
    """Two independent computations that must agree did not."""
