"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its domain (wrong surface, wrong degree, ...)."""


class MalformedPresentationError(ValueError):
    """A bundle presentation is inconsistent (rank, surface, Whitney data)."""


class IntegrityError(RuntimeError):
    """Two independent computations that must agree did not."""
