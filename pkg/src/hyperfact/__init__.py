"""Hyperbola-based integer factorization with exact arithmetic."""

__version__ = "0.1.0"
