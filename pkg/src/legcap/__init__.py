"""Fundamental capacity of Legendrian knots from plat fronts, and the width
and length bounds it yields."""

__version__ = "0.1.0"
