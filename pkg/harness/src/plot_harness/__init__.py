"""Headless executor for generated plotting scripts."""

__version__ = "0.1.0"
