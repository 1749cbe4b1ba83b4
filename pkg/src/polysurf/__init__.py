"""Polyhedral surfaces realizing graphs, checked with exact arithmetic."""

__version__ = "0.1.0"
