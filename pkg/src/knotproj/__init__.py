"""Spherical curves (knot projections) as Gauss words and combinatorial maps.

Chord-diagram patterns, Reidemeister and A^-1 moves, reduction, strong (1, 2)
homotopy search, reductivity, and exhaustive verification over small curves.
"""

from knotproj.word import GaussWord, canonicalize, parity_filter, parse
from knotproj.cmap import CombMap, Embedding, face_census, faces, realize_all

__all__ = [
    "CombMap",
    "Embedding",
    "GaussWord",
    "canonicalize",
    "face_census",
    "faces",
    "parity_filter",
    "parse",
    "realize_all",
]

__version__ = "0.1.0"
