"""Exception hierarchy shared by the khwp library and CLI.

Each class maps to one CLI exit code so that failure modes stay
distinguishable in scripts (see cli.EXIT_CODES).
"""


class KhwpError(Exception):
    """Base class for all library errors."""


class GraphFormatError(KhwpError):
    """Malformed instance file: parse error, self-loop, duplicate edge,
    out-of-range vertex, or a disconnected graph where connectivity is
    required."""


class NotATreeError(KhwpError):
    """A tree-only operation was handed a graph with cycles or the wrong
    edge count."""


class InfeasibleError(KhwpError):
    """The instance admits no solution (e.g. no connected set cover)."""


class CapExceededError(KhwpError):
    """An exact routine was asked to run above its configured size cap.

    Caps refuse explicitly instead of silently degrading; raise this
    rather than truncating the search.
    """


class InvariantViolationError(KhwpError):
    """An internal invariant that should hold by construction failed.

    Also used for empirically asserted bounds that the library checks on
    every run (these are surfaced, never swallowed).
    """
