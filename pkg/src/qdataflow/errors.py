"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain an operation accepts."""


class UnsupportedGateError(ValueError):
    """The gate kind has no unitary matrix (WRITE, ENCODE)."""


class ResourceError(ValueError):
    """The request exceeds the size a dense brute-force routine allows."""


class CircuitValidationError(ValueError):
    """A circuit violates a structural invariant."""
