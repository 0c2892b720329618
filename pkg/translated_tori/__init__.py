"""Exact computations on characteristic and resonance varieties of hyperplane arrangements."""

__version__ = "0.1.0"
