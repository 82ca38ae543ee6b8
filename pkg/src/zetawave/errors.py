"""Exception taxonomy shared by every module in the package."""

from __future__ import annotations

__all__ = [
    "ZetawaveError",
    "DomainError",
    "OverflowRangeError",
    "NonConvergenceError",
    "StepSizeError",
]


class ZetawaveError(Exception):
    """Base class for everything raised deliberately by this package."""


class DomainError(ZetawaveError, ValueError):
    """Argument outside the mathematical or contracted domain.

    Poles, guard regions around removable singularities, and plain
    bad arguments all land here so callers can catch one type.
    """


class OverflowRangeError(ZetawaveError, OverflowError):
    """The result (or a necessary intermediate) exceeds double range."""


class NonConvergenceError(ZetawaveError, ArithmeticError):
    """A series, iteration, or quadrature failed to meet its tolerance."""


class StepSizeError(ZetawaveError, ArithmeticError):
    """A finite-difference probe cannot deliver the requested accuracy.

    Raised both when the step is too large for the local curvature and
    when the evaluation point sits too close to a node of the function
    being differentiated.
    """
