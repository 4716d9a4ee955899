"""Exact moments and free cumulants for weighted-graph path algebras."""

__version__ = "0.1.0"
