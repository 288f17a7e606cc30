"""lfunc: L-functions, gamma- and epsilon-factors over function fields."""

__version__ = "0.1.0"
