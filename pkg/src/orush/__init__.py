"""Exact workbench for Ohm-Rush content functions over computable rings."""

__version__ = "0.1.0"
