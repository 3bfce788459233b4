"""Combinatorics and arithmetic of singular del Pezzo surfaces over finite fields."""

__version__ = "0.1.0"
