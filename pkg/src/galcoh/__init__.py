"""Exact cohomology of finite groups with integral coefficients, extensions,
Tate-Nakayama triples and the torus groups B_i(F, T) on finite models."""

__version__ = "0.1.0"
