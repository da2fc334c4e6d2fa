"""Toric degenerations of Grassmannians, their polytopes, groups and mirrors."""

__version__ = "0.1.0"
