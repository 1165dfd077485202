"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates an axiom or a documented precondition.

    ``location`` points at the offending piece of input (an axiom name,
    a morphism pair, a document key) when one is known.
    """

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class NotContainedError(ValidationError):
    """A subspace is not contained in another; ``witness`` is a vector outside."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(RuntimeError):
    """An internal mathematical invariant failed (d∘d ≠ 0, non-exactness, ...)."""
