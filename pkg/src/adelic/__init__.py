"""Exact arithmetic for adele rings, local fields and adelic point groups."""

__version__ = "0.1.0"
