"""Projective differential invariants, osculating hypersurfaces and quadric systems, computed exactly over Q."""

__version__ = "0.1.0"
