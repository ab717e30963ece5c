"""Exact tools for hyperbolic polynomials, spectrahedral cones and the
specialized Vamos polynomial."""
from hypercone.kernels import BACKEND
from hypercone.ring import Poly, PolyVec, NotDivisible

__version__ = "0.1.0"

__all__ = ["BACKEND", "Poly", "PolyVec", "NotDivisible", "__version__"]
