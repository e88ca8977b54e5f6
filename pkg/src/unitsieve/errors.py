"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class UnsupportedError(ValueError):
    """The input is well-formed but the requested case is not implemented."""
