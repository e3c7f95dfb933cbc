"""Finite polarities, stable-set lattices, normal lattices with operators,
and bounded morphisms between them."""

__version__ = "0.1.0"
