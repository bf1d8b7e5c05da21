"""Exception hierarchy shared by every flatspan module."""

from __future__ import annotations


class FlatspanError(Exception):
    """Base class for all errors raised by flatspan."""


class DimensionMismatchError(FlatspanError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UndefinedProjectionError(FlatspanError, ValueError):
    """Raised when projecting an object contained in the projection center."""


class DuplicatePointError(FlatspanError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConfigParseError(FlatspanError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ConstructionError(FlatspanError, ValueError):
    """A generator was asked for a configuration it cannot build."""


class PreconditionError(FlatspanError, ValueError):
    """An operation was called outside the hypothesis it is defined for."""


class RangeError(FlatspanError, ValueError):
    """A dimension or index argument is outside its allowed range."""
