"""Schubert structure constants for permutations with separated descents."""

__version__ = "0.1.0"
