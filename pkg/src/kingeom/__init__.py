"""Exact kinematical algebras and their Beltrami-coordinate geometries."""

__version__ = "0.1.0"
