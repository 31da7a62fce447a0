"""Exact computer algebra for the deformed higher rank Heisenberg-Virasoro algebras."""

from .algebra import CI, CL, CLI, CLIP, Element, I, Key, L, bracket, jacobi_check
from .grading import AlgebraContext, Variant, value
from .scalars import Scalar, specialize

__all__ = [
    "AlgebraContext", "CI", "CL", "CLI", "CLIP", "Element", "I", "Key", "L",
    "Scalar", "Variant", "bracket", "jacobi_check", "specialize", "value",
]
