from __future__ import annotations


class InvalidInput(ValueError):
    """Input violates a documented precondition."""


class FormatError(InvalidInput):
    """A text file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None) -> None:
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class BudgetExceeded(RuntimeError):
    """A search ran out of its node or time allowance."""
