"""Exact Schubert-calculus engine for osculating planes on hypersurfaces."""

__version__ = "0.1.0"
