"""Exact classification of epsilon-hermitian forms over a real closed field in ten cases."""

from .cases import (
    CASES,
    ExactForm,
    FormInvariant,
    classify_case,
    is_isometric_exact,
    witt_class_case,
)

__all__ = [
    "CASES",
    "ExactForm",
    "FormInvariant",
    "classify_case",
    "is_isometric_exact",
    "witt_class_case",
]
