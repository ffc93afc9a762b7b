"""Equivariant epsilon-symmetric spaces over finite fields and their constructions."""

from .constructions import (
    diagonal_form,
    hyperbolic,
    induce,
    orthogonal_sum,
    permutation_form,
    restrict,
    tensor_scalar_form,
)
from .space import EquivariantSpace, ModuleRep, make_space
from .witt import witt_class_plain

__all__ = [
    "diagonal_form",
    "hyperbolic",
    "induce",
    "orthogonal_sum",
    "permutation_form",
    "restrict",
    "tensor_scalar_form",
    "EquivariantSpace",
    "ModuleRep",
    "make_space",
    "witt_class_plain",
]
