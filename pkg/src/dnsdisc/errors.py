"""Exception types shared across the package."""


class TruncationError(ValueError):
    """The truncated Fock basis cannot hold a state to the requested tolerance."""


class IntegrityError(ArithmeticError):
    """Two routes that must agree numerically did not."""
