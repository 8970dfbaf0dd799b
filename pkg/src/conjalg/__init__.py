"""Stable algebras of conjugacy classes of G_n with respect to S_n."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    bracket_graded,
    bullet,
    degree,
    glue,
    involution,
    star,
)
from .conjugacy import ConjClass, canonicalize, class_enumerate, class_inverse
from .perm import FamilyDescriptor, GroupElement, Permutation, parse_element

__all__ = [
    "AlgebraElement",
    "ConjClass",
    "FamilyDescriptor",
    "GroupElement",
    "Permutation",
    "bracket_graded",
    "bullet",
    "canonicalize",
    "class_enumerate",
    "class_inverse",
    "degree",
    "glue",
    "involution",
    "parse_element",
    "star",
]
