"""Skew group rings over finite fields, their Wedderburn structure and K-theory."""

__version__ = "0.1.0"
