"""Exception types shared across the package."""


class OpMeansError(Exception):
    """Base class for all errors raised by opmeans."""


class DimensionMismatch(OpMeansError):
    """Operands have incompatible shapes."""


class DomainViolation(OpMeansError):
    """An eigenvalue (or matrix) falls outside the domain of an operation,
    e.g. a non-positive-definite input to a mean, or log of a nonpositive
    eigenvalue. The message names the offending eigenvalue."""


class NonConvergence(OpMeansError):
    """The Jacobi eigensolver failed to reach its off-diagonal threshold
    within the sweep cap."""


class InvalidMeasure(OpMeansError):
    """A discrete measure violates its invariants (nodes outside [0, 1],
    negative weights, or weights not summing to one)."""


class ZeroExponent(OpMeansError):
    """p = 0 was passed to the power mean; the geometric limit is not
    interpolated (use the geometric mean directly)."""


class ZeroOperator(OpMeansError):
    """An angle was requested against a zero matrix."""


class NoSignChange(OpMeansError):
    """A crossing-refinement bracket does not bracket a slope sign change."""
