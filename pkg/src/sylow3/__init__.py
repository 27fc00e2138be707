"""Sylow 3-subgroups, character tables and the sigma action on principal 3-blocks."""

__version__ = "0.1.0"
