"""Exact free-group toolkit for identity sequences and their Lambda invariants."""

__version__ = "0.1.0"
