"""Exception types shared across the package."""

from __future__ import annotations


class DivergenceError(ArithmeticError):
    """Raised when an orbit leaves the finite / guarded region.

    ``step`` and ``node`` locate the failure when known (node is 1-based).
    """

    def __init__(self, message: str, step: int | None = None, node: int | None = None):
        super().__init__(message)
        self.step = step
        self.node = node


class DegenerateSeries(ValueError):
    """A series has (numerically) zero variance where a spread is required."""


class TooShort(ValueError):
    """A series is too short for the requested embedding."""


class ConfigError(ValueError):
    """Invalid configuration; ``path`` names the offending field."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
