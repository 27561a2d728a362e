"""Exact decision procedures for Gorenstein gluings of normal surfaces
along conductor data."""

__version__ = "0.1.0"
