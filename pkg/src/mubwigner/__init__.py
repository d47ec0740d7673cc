"""Discrete Wigner functions, MUBs and the C_d polytope."""

__version__ = "0.1.0"
