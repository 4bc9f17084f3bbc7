"""Exact and certified-numeric verification of a ball-quotient surface construction."""

__version__ = "0.1.0"
