"""Argument-shift toolkit for finite-dimensional Lie algebras."""

__version__ = "0.1.0"
