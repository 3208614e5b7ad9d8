"""Exception types shared across the package."""


class FracdimError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracdimError, ValueError):
    """A parameter or input value is outside its mathematical domain."""


class AdmissibilityError(FracdimError, ValueError):
    """An (N, k_max)-style size constraint is violated."""


class EmptySubseriesError(FracdimError):
    """A stride/offset combination selects no increments (q = 0)."""


class DegenerateRegressionError(FracdimError):
    """Fewer than two points, or zero variance in the x coordinates."""
