"""Burnside rings, tables of marks and the projection-formula identities."""

from .induction import InductionPair, induce, induction_pair, restrict
from .projection import projection_suite
from .ring import BurnsideElement, BurnsideRing, SpectralData, burnside_ring

__all__ = [
    "InductionPair",
    "induce",
    "induction_pair",
    "restrict",
    "projection_suite",
    "BurnsideElement",
    "BurnsideRing",
    "SpectralData",
    "burnside_ring",
]
