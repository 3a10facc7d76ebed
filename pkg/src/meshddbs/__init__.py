"""Largest mesh subgraphs under degree and diameter constraints."""

__version__ = "0.1.0"
