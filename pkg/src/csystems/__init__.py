"""Executable checks for C-systems built from universe categories."""

__version__ = "0.1.0"
