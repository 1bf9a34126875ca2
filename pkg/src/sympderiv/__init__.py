"""Exact-arithmetic symplectic derivation lattices and their verification."""

__version__ = "0.1.0"
