"""Exact-arithmetic toolkit for finite monoids, finite-dimensional
cocommutative bialgebras, their adjunction, and split-extension analysis."""

__version__ = "0.1.0"
