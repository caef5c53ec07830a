"""Wronskians of Hermite polynomials indexed by partitions: exact algebra,
certified zeros, and asymptotic zero curves."""

__version__ = "0.1.0"
