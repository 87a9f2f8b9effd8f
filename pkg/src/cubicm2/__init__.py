"""Verification toolkit for the six-line modular map of cubic threefolds."""

__version__ = "0.1.0"
