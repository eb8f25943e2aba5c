"""Exception types shared across the toolkit."""

from __future__ import annotations


class PushcritError(Exception):
    """Base class for all toolkit errors."""


class InvalidPushSetError(PushcritError):
    """A push set names a vertex outside the graph."""


class IncompatibleInputError(PushcritError):
    """Two graphs that must share vertices / underlying edges do not."""


class StructuralViolationError(PushcritError):
    """An operation would create a loop, digon or parallel arc."""


class GraphParseError(PushcritError):
    """Malformed graph text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedInputError(PushcritError):
    """The operation is undefined for this input (e.g. empty graph)."""


class UnclassifiableGraphError(PushcritError):
    """The graph has no chain decomposition; names the offending vertices."""

    def __init__(self, message: str, vertices: tuple[int, ...] = ()):
        self.vertices = vertices
        super().__init__(message)


class ConfigError(PushcritError):
    """A parameter is outside the supported range."""


class FixtureIntegrityError(PushcritError):
    """A builtin graph failed one of its transcription gates."""


class ResourceBudgetError(PushcritError):
    """A search or enumeration ran out of its node / wall-time budget.

    ``partial`` holds whatever progress is safe to reuse (records already
    produced, nodes explored, a resume cursor) so callers can persist it.
    """

    def __init__(self, message: str, partial=None, nodes: int | None = None):
        self.partial = partial
        self.nodes = nodes
        super().__init__(message)
