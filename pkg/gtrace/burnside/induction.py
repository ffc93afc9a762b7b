"""Induction and restriction between Burn(S) and Burn(G) for a subgroup S of G."""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List

import numpy as np

from gtrace.burnside.ring import BurnsideElement, BurnsideRing, burnside_ring
from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import SpecError
from gtrace.groups.gset import GSet, coset_action
from gtrace.groups.subgroups import SubgroupRef


def induce_gset(S: SubgroupRef, X: GSet) -> GSet:
    """
    The balanced product G x_S X as an explicit G-set.

    The point of (g, x) is its least representative among the (g s^-1, s x), compared
    as ``g * |X| + x``; points are numbered by increasing representative.

    :param S: Subgroup of G.
    :param X: S-set over ``S.as_group``.
    """
    if X.group != S.as_group:
        raise SpecError("induction needs an S-set over the subgroup")
    G = S.parent
    n = X.size
    s = np.asarray(S.elements, dtype=np.int64)
    Tg = G.table[:, G.inverse[s]]
    keys = (Tg[:, :, None] * n + X.action[None, :, :]).min(axis=1)
    points = np.unique(keys)
    where = {int(k): i for i, k in enumerate(points)}
    reps_g, reps_x = points // n, points % n
    images = keys[G.table[:, reps_g], reps_x[None, :]]
    action = np.vectorize(where.__getitem__, otypes=[np.int64])(images)
    return GSet(G, action)


@dataclass
class InductionPair:
    """
    Induction i: Burn(S) -> Burn(G) and restriction r: Burn(G) -> Burn(S) as integer
    matrices acting on coefficient columns, and ``R_map = r i`` on Burn(S).
    """

    subgroup: SubgroupRef
    budgets: Budgets = DEFAULT_BUDGETS
    ring_G: BurnsideRing = field(init=False)
    ring_S: BurnsideRing = field(init=False)
    i_matrix: List[List[int]] = field(init=False)
    r_matrix: List[List[int]] = field(init=False)
    R_map: List[List[int]] = field(init=False)

    def __post_init__(self):
        """Tabulate both maps on basis elements."""
        S = self.subgroup
        self.ring_G = burnside_ring(S.parent, self.budgets)
        self.ring_S = burnside_ring(S.as_group, self.budgets)
        i_cols = [
            self.ring_G.decompose_gset(induce_gset(S, coset_action(S.as_group, cls.representative)))
            for cls in self.ring_S.classes.classes
        ]
        r_cols = [self.ring_S.decompose_gset(X.restrict_to(S)) for X in self.ring_G.basis_gsets]
        self.i_matrix = _columns_to_matrix([c.coeffs for c in i_cols], self.ring_G.h)
        self.r_matrix = _columns_to_matrix([c.coeffs for c in r_cols], self.ring_S.h)
        self.R_map = _matmul(self.r_matrix, self.i_matrix)

    def induce(self, x: BurnsideElement) -> BurnsideElement:
        """i(x)."""
        if x.ring.group != self.ring_S.group:
            raise SpecError("induction expects an element of Burn(S)")
        return self.ring_G.element(_apply(self.i_matrix, x.coeffs))

    def restrict(self, y: BurnsideElement) -> BurnsideElement:
        """r(y)."""
        if y.ring.group != self.ring_G.group:
            raise SpecError("restriction expects an element of Burn(G)")
        return self.ring_S.element(_apply(self.r_matrix, y.coeffs))

    def R(self, x: BurnsideElement) -> BurnsideElement:
        """R(x) = r(i(x))."""
        return self.restrict(self.induce(x))


def _columns_to_matrix(columns, rows: int) -> List[List[int]]:
    return [[int(col[i]) for col in columns] for i in range(rows)]


def _matmul(A: List[List[int]], B: List[List[int]]) -> List[List[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _apply(A: List[List[int]], v) -> List[int]:
    return [sum(a * int(c) for a, c in zip(row, v)) for row in A]


@lru_cache(maxsize=64)
def induction_pair(S: SubgroupRef, budgets: Budgets = DEFAULT_BUDGETS) -> InductionPair:
    """Cached InductionPair for S <= G."""
    return InductionPair(S, budgets)


def induce(
    S: SubgroupRef, x: BurnsideElement, budgets: Budgets = DEFAULT_BUDGETS
) -> BurnsideElement:
    """
    Ind from S to G on Burn(S).

    :param S: Subgroup of G.
    :param x: Element of Burn(S) (over ``S.as_group``).
    """
    return induction_pair(S, budgets).induce(x)


def restrict(
    S: SubgroupRef, y: BurnsideElement, budgets: Budgets = DEFAULT_BUDGETS
) -> BurnsideElement:
    """
    Res from G to S on Burn(G).

    :param S: Subgroup of G.
    :param y: Element of Burn(G).
    """
    return induction_pair(S, budgets).restrict(y)
