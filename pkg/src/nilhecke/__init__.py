"""Truncated nil-Hecke algebras of Coxeter systems: bases, dimensions, finiteness."""
__version__ = "0.1.0"
