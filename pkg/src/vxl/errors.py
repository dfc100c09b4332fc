"""Shared exception types."""

from __future__ import annotations

from typing import Optional


class VxlError(Exception):
    pass


class ParseError(VxlError):
    def __init__(self, message: str, line: int, col: int, expected=None):
        self.message = message
        self.line = line
        self.col = col
        self.expected = list(expected) if expected else []
        loc = f"{line}:{col}"
        if self.expected:
            super().__init__(f"{loc}: {message} (expected {', '.join(self.expected)})")
        else:
            super().__init__(f"{loc}: {message}")


class MarkerError(VxlError):
    """Raised by marker editing operations on precondition violations."""


class UnknownIdError(MarkerError):
    """A marker id or index that does not exist in the current program."""


class ConfigError(VxlError):
    """Universe configuration problems: missing entry, empty variation
    points, guard violations."""


class GuardError(ConfigError):
    """The universe-count guard or a last-enabled-alternative guard fired."""


class RuntimeFault(Exception):
    """Internal control-flow exception for VXL runtime errors; converted to
    an ExecutionResult error, never escapes evaluate()."""

    def __init__(self, message: str, span=None):
        self.message = message
        self.span = span
        super().__init__(message)
