"""Exact combinatorics of wide subcategories over domestic weighted
projective lines."""

__version__ = "0.1.0"
