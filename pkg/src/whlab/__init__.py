"""Whitehead graphs, free factors and rigidity experiments in free groups."""

__version__ = "0.1.0"
