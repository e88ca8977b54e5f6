"""Dimension counts, p-adic polylogarithms and determinant sieves for the S-unit equation."""

from .errors import DomainError, UnsupportedError

__version__ = "0.1.0"

__all__ = ["DomainError", "UnsupportedError", "__version__"]
