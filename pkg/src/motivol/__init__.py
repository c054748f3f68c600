"""Motivic invariants of non-archimedean semialgebraic data."""
__version__ = "0.1.0"
