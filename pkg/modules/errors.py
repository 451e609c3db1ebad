"""
ImsetMind - Imset Toolkit for Graphical Models
Exception hierarchy shared by every module.

Each error also derives from the closest builtin so callers that only
catch ValueError / RuntimeError keep working.
"""


class ImsetMindError(Exception):
    """Base class for all ImsetMind errors."""


class GraphParseError(ImsetMindError, ValueError):
    """Malformed graph, triplet or imset text."""

    def __init__(self, message, line_number=None, line=None):
        self.line_number = line_number
        self.line = line
        if line_number is not None:
            message = f"line {line_number}: {message}"
            if line is not None:
                message = f"{message} ({line.strip()!r})"
        super().__init__(message)


class UnknownVertexError(ImsetMindError, ValueError):
    """A label or index outside the universe."""


class GraphStructureError(ImsetMindError, ValueError):
    """Self-loops, duplicate or conflicting edges."""


class GraphClassError(ImsetMindError, ValueError):
    """The graph is not of the class an operation requires (UG, DAG, CG)."""


class NotChordalError(GraphClassError):
    pass


class MissingEdgesError(ImsetMindError, ValueError):
    """A supposed supergraph misses edges of the base graph."""


class NotChainComponentError(ImsetMindError, ValueError):
    pass


class NotMetaArrowError(ImsetMindError, ValueError):
    pass


class InvalidTripletError(ImsetMindError, ValueError):
    pass


class UniverseMismatchError(ImsetMindError, ValueError):
    """Objects built over different label tables or vertex sets."""


class GuardExceededError(ImsetMindError, RuntimeError):
    """A size guard refused an exponential computation."""

    def __init__(self, what, limit, actual, counts=None):
        self.what = what
        self.limit = limit
        self.actual = actual
        self.counts = counts
        message = f"{what}: {actual} exceeds the limit of {limit}"
        if counts:
            message += f" (per-component counts: {counts})"
        super().__init__(message)


class ImsetOverflowError(ImsetMindError, OverflowError):
    """An imset coefficient left the signed 64-bit range."""


class ConfigError(ImsetMindError, ValueError):
    pass


class InternalInvariantError(ImsetMindError, RuntimeError):
    """Should never happen; indicates a defect."""


class OracleMismatchError(InternalInvariantError):
    """An imset answer disagreed with the graph separation oracle."""
