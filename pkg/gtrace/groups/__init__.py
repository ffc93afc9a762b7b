"""Finite groups, their subgroups and G-sets."""

from .finite_group import FiniteGroup, build_group
from .gset import GSet, coset_action, regular_gset, trivial_gset
from .subgroups import SubgroupRef, subgroup_classes, sylow2

__all__ = [
    "FiniteGroup",
    "build_group",
    "GSet",
    "coset_action",
    "regular_gset",
    "trivial_gset",
    "SubgroupRef",
    "subgroup_classes",
    "sylow2",
]
