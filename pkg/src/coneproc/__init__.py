"""Exact informativity analysis of state data for conically constrained linear systems."""

__version__ = "0.1.0"
