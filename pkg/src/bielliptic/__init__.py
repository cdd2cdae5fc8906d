"""Exact classification of Brauer maps of bielliptic surfaces to their canonical covers."""

__version__ = "0.1.0"
