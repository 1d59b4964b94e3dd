"""
Custom exceptions for the lazy-sssp package.

Every error raised on purpose by the package derives from SsspError so callers
can catch the whole family at a command boundary.
"""

from typing import Optional


class SsspError(Exception):
    """Base exception for all lazy-sssp errors."""

    pass


class GraphError(SsspError):
    """Raised when an update is rejected by the graph."""

    pass


class SelfLoopError(GraphError):
    """Raised when an edge would connect a vertex to itself."""

    pass


class VertexRangeError(GraphError):
    """Raised when a vertex id lies outside [0, n)."""

    pass


class WeightRangeError(GraphError):
    """Raised when an edge weight is outside the accepted range."""

    pass


class ScriptParseError(SsspError):
    """
    Raised when an update script or answer sidecar cannot be parsed.

    Attributes:
        line: 1-based line number of the offending input
        column: 1-based column of the offending token
    """

    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnreachableError(SsspError):
    """Raised when a path is requested for a vertex the source cannot reach."""

    pass


class GadgetError(SsspError):
    """Raised when a gadget generator receives malformed input."""

    pass


class ConfigError(SsspError):
    """Raised when a configuration value is invalid."""

    pass


class VerificationError(SsspError):
    """Raised when a replay disagrees with the oracle."""

    def __init__(self, message: str, report: Optional[object] = None):
        self.report = report
        super().__init__(message)
