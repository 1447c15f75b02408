"""Exception hierarchy shared by all modules."""


class GammomentsError(Exception):
    """Base class for all package errors."""


class DomainError(GammomentsError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(GammomentsError):
    """A gamma factor was evaluated at a nonpositive integer."""


class ConstraintError(GammomentsError):
    """A structural inequality (r > |k|, |eps| < 1, ...) is violated."""


class TruncationError(GammomentsError):
    """Contour truncation left a non-negligible tail, or cancellation
    destroyed all significant digits of a contour sum."""


class ConvergenceError(GammomentsError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SearchError(GammomentsError):
    """A parameter search failed (e.g. the positivity ratio looks unbounded)."""


class UndecidedError(GammomentsError):
    """A convergence classification sits in the dead zone with no stable limit."""


class InconclusiveError(GammomentsError):
    """No window certifying the required convexity could be found."""


class RefusesError(GammomentsError):
    """Criteria were requested for a density that does not solve the sequence."""


class ConsistencyError(GammomentsError):
    """Two criteria produced verdicts that cannot hold simultaneously."""
