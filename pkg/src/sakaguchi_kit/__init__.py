"""Coefficient bounds and Hermitian-Toeplitz determinants for Sakaguchi-type classes."""

__version__ = "0.1.0"
