"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the physically meaningful domain."""


class PhysicalityError(ValueError):
    """A covariance matrix or derived quantity violates physicality by more
    than numerical noise."""


class EvaluationError(RuntimeError):
    """A numerical search could not produce a usable value."""


class TruncationError(ValueError):
    """A Fock-space cutoff is too small for the requested state."""
