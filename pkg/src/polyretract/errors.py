"""Exception types raised by polyretract.

Every error derives from :class:`RetractionError`, so callers that only care
whether a computation succeeded can catch a single class. The subclasses also
inherit from the closest builtin (``ValueError`` or ``ArithmeticError``) so
that generic handlers keep working.
"""


class RetractionError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(RetractionError, ValueError):
    """Matrix shapes are incompatible with the operation."""


class StructureError(RetractionError, ValueError):
    """Input lacks a required structure (skew-Hermitian, orthonormal, tangent)."""


class DomainError(RetractionError, ValueError):
    """An argument lies outside the supported range."""


class UnsupportedOrderError(DomainError):
    """Requested polynomial order is not available for this manifold."""


class RankError(RetractionError, ArithmeticError):
    """Matrix is (numerically) rank deficient."""


class DefinitenessError(RetractionError, ArithmeticError):
    """Matrix expected to be Hermitian positive-definite is not."""


class BranchCutError(RetractionError, ArithmeticError):
    """Principal logarithm requested for an eigenvalue at or near -1."""


class SingularityError(RetractionError, ArithmeticError):
    """An iterate or weighted sum became singular."""


class StepTooLargeError(RetractionError, ArithmeticError):
    """The pre-projection matrix lost rank; retry with a smaller step t."""


class NonConvergenceError(RetractionError, ArithmeticError):
    """Fixed-point iteration hit its iteration budget.

    The last residual is kept on ``residual`` and the number of iterations
    performed on ``iterations``.
    """

    def __init__(self, message, residual=float("nan"), iterations=0):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
