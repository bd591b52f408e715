"""Exact computation of Macdonald, shifted Macdonald and shifted Jack polynomials."""

__version__ = "0.1.0"
