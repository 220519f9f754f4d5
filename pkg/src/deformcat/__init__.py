"""Exact computations in twisted subgroup-category algebras and biset-category deformations."""

__version__ = "0.1.0"
