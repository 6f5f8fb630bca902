"""Exact computer algebra for the quantum supergroup GL(m|n) and its classical limit."""

from .presentation import Element, Presentation, QMode, build_presentation, normal_form
from .scalars import LaurentScalar, parse_scalar

__all__ = [
    "Element",
    "LaurentScalar",
    "Presentation",
    "QMode",
    "build_presentation",
    "normal_form",
    "parse_scalar",
]

__version__ = "0.1.0"
