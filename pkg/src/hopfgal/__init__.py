"""Exact Hopf-Galois computations over Q, Q(i) and GF(p)."""

__version__ = "0.1.0"
