"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Chow classes living on different P^n x P^n were combined."""


class NonUnitError(ValueError):
    """Attempted to invert a Chow class whose constant term is not 1."""


class ArithmeticFault(ArithmeticError):
    """A quantity that must be integral came out fractional (a bug)."""


class SmoothnessError(ValueError):
    """The bilinear form is degenerate, so the divisor is singular."""


class ModelInconsistencyError(RuntimeError):
    """A measured dimension profile matches no splitting type."""


class InfeasibleChaseError(RuntimeError):
    """Cohomology data admits no assignment compatible with exactness."""


class SamplingError(RuntimeError):
    """Random point sampling kept landing in a degenerate locus."""
