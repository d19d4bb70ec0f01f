"""Prehomogeneous affine representations: exact invariants and characteristic classes."""
