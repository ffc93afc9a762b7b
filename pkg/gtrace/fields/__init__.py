"""Finite fields of odd characteristic, linear algebra and polynomials over them."""

from .finite_field import FieldDesc, FieldElement, field_embedding, make_field
from .polynomials import factor_poly

__all__ = ["FieldDesc", "FieldElement", "field_embedding", "make_field", "factor_poly"]
