"""Exact arithmetic, Pell solvers, curve searches and exhaustive checks
around three consecutive powerful numbers x^3 - 1, x^3, x^3 + 1."""

__version__ = "0.1.0"
