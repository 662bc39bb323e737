"""
Exception hierarchy shared by every service and the CLI.

The CLI maps these onto exit codes the same way the old API layer mapped
failures onto HTTP status codes.
"""

from typing import Optional


class AlbScreenError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class InvalidArgumentError(AlbScreenError, ValueError):
    """A precondition on an argument was violated."""

    exit_code = 2


class DomainError(AlbScreenError, ValueError):
    """A numeric input lies outside the function's domain (e.g. NaN, inf)."""

    exit_code = 2


class DataParseError(AlbScreenError):
    """A data file could not be parsed; carries the offending location."""

    exit_code = 3

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        if location:
            message = f"{message} (at {', '.join(location)})"
        super().__init__(message)


class SchemaError(AlbScreenError):
    """Data is well-formed but does not match the expected schema."""

    exit_code = 3


class NoViableCutoffError(AlbScreenError):
    """Cross-validation found no candidate cutoff that selects anything."""

    exit_code = 4
