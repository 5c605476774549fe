"""Rational solutions of a four-dimensional Painleve-type system with affine Weyl symmetry of type D5."""

__version__ = "0.1.0"
