"""
Edge Colouring Errors

Every rejection raised by the library derives from EdgeColouringError,
which is a ValueError so callers that only know "bad input" still work.
"""

from typing import Optional


class EdgeColouringError(ValueError):
    """Base class for all library rejections."""


class VertexRangeError(EdgeColouringError):
    """Vertex id outside [0, capacity)."""

    def __init__(self, vertex: int, capacity: int):
        super().__init__(f"vertex {vertex} outside [0, {capacity})")
        self.vertex = vertex
        self.capacity = capacity


class SelfLoopError(EdgeColouringError):
    """Edge with identical endpoints."""

    def __init__(self, vertex: int):
        super().__init__(f"self-loop at vertex {vertex}")
        self.vertex = vertex


class DuplicateEdgeError(EdgeColouringError):
    """Edge already present."""

    def __init__(self, edge):
        super().__init__(f"edge {edge} already present")
        self.edge = edge


class MissingEdgeError(EdgeColouringError):
    """Edge not present."""

    def __init__(self, edge):
        super().__init__(f"edge {edge} not present")
        self.edge = edge


class LevelError(EdgeColouringError):
    """Illegal level move (e.g. decrementing a vertex at level 1)."""


class PaletteError(EdgeColouringError):
    """Palette misuse: marking a used colour, unmarking a free one, bad range."""


class ColouringError(EdgeColouringError):
    """Invalid colouring request, order or partition."""


class ConfigError(EdgeColouringError):
    """Invalid engine or run configuration."""


class UsageError(EdgeColouringError):
    """Algorithm cannot be applied to the given input."""


class InvariantError(EdgeColouringError):
    """Runtime assertion failed in debug mode."""


class StreamError(EdgeColouringError):
    """Malformed or illegal update stream, with 1-based position."""

    def __init__(self, message: str, line: int, column: Optional[int] = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column
