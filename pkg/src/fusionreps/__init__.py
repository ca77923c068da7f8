"""Representation rings of fusion systems and dimension functions of stable representations."""

__version__ = "0.1.0"
