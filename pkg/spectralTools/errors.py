"""
Error types raised by the graph tools.
Every error remembers the operation that raised it so the CLI can report
"file: operation: message".
"""


class GraphToolError(Exception):
    """Root of every error raised by spectralTools and the verifier."""

    def __init__(self, message: str, op: str = ""):
        super().__init__(message)
        self.op = op

    def describe(self) -> str:
        return f"{self.op}: {self}" if self.op else str(self)


class IndexOutOfRange(GraphToolError, IndexError):
    pass


class ZeroMultiplicity(GraphToolError):
    pass


class NotRegular(GraphToolError):
    pass


class EmptySet(GraphToolError):
    pass


class ConvergenceFailure(GraphToolError):
    pass


class Disconnected(GraphToolError):
    pass


class TooLarge(GraphToolError):
    pass


class NotTransitive(GraphToolError):
    pass


class InconsistentOrder(GraphToolError):
    """Exhaustive pair count disagrees with |G|/n. Means a bug, never ignored."""


class NotSymmetricSet(GraphToolError):
    pass


class MatchingFailure(GraphToolError):
    """No perfect matching in a regular bipartite residual. Means a bug."""


class NotAutomorphism(GraphToolError):
    pass


class NoIndex(GraphToolError):
    """No cover index solves the quasi-automorphism equation. Means a bug."""


class NonPositiveEpsilon(GraphToolError, ValueError):
    pass


class OutOfRange(GraphToolError, ValueError):
    pass


class NotApplicable(GraphToolError):
    pass


class GraphFormatError(GraphToolError, ValueError):
    pass


class GroupSpecError(GraphToolError, ValueError):
    pass


class BoundViolation(GraphToolError):
    """A measured spectrum escapes an interval endpoint."""
