"""Shared exception types."""


class DomainError(ValueError):
    """Input lies outside an operation's mathematical domain."""


class RankZeroError(DomainError):
    """Slope or discriminant was requested for a rank-zero character."""


class DescentError(RuntimeError):
    """Interval search exceeded its order budget.

    Raised when the bracketing descent fails to locate an enclosing
    interval within ``max_order`` subdivisions; signals either a
    Cantor-set input or an upstream bug.
    """


class ConsistencyError(RuntimeError):
    """An internal cross-check failed, indicating a bug upstream."""
