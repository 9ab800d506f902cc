"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class DegenerateOrderError(DomainError):
    """Imaginary order too close to zero for a stable Hankel assembly."""


class SeriesRangeError(DomainError):
    """Argument outside the certified domain of the ascending power series."""


class AccuracyError(RuntimeError):
    """A computation finished but cannot vouch for its own accuracy."""
