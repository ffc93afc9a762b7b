"""Algebras with involution over F_p and their classes of hermitian elements."""

from .algebra import AlgebraWithInvolution, HermitianElement, endomorphism_algebra
from .classes import HermitianClassSet, class_set_exhaustive, diagonal_embed
from .radical import jacobson_radical, reduce_mod_radical
from .structural import classify_classes_structural, same_class
from .wedderburn import split_semisimple

__all__ = [
    "AlgebraWithInvolution",
    "HermitianElement",
    "endomorphism_algebra",
    "HermitianClassSet",
    "class_set_exhaustive",
    "diagonal_embed",
    "jacobson_radical",
    "reduce_mod_radical",
    "classify_classes_structural",
    "same_class",
    "split_semisimple",
]
