"""Computational workbench for quotients of infinite symmetric groups."""

__version__ = "0.1.0"
