"""Exact combinatorics behind tautological 0-cycles on moduli of curves."""

__version__ = "0.1.0"
