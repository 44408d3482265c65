"""Compile finite-group realizability questions into polynomial systems."""

__version__ = "0.1.0"
