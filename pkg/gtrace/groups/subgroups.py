"""Subgroups, conjugacy classes of subgroups and related structure."""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import SpecError
from gtrace.groups.finite_group import FiniteGroup


@dataclass(frozen=True)
class SubgroupRef:
    """A subgroup of ``parent``, given by its sorted element indices."""

    parent: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self):
        """Check closure under products and inverses."""
        idx = np.asarray(self.elements, dtype=np.int64)
        if not self.elements or self.elements[0] != 0 or list(idx) != sorted(set(idx.tolist())):
            raise SpecError("subgroup elements must be sorted, distinct and contain 0")
        T = self.parent.table
        if not np.isin(T[np.ix_(idx, idx)], idx).all():
            raise SpecError("subset is not closed under multiplication")

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.elements)

    @property
    def index(self) -> int:
        """Index in the parent group."""
        return self.parent.order // self.order

    def __contains__(self, a: int) -> bool:
        """Membership of a parent element."""
        return a in self._position

    def __repr__(self) -> str:
        """Short description."""
        return f"SubgroupRef(order={self.order} in {self.parent!r})"

    @cached_property
    def _position(self) -> Dict[int, int]:
        return {a: i for i, a in enumerate(self.elements)}

    def local_index(self, a: int) -> int:
        """Position of a parent element inside ``as_group``."""
        return self._position[a]

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; element i is ``elements[i]``."""
        idx = np.asarray(self.elements, dtype=np.int64)
        sub = self.parent.table[np.ix_(idx, idx)]
        lookup = np.full(self.parent.order, -1, dtype=np.int64)
        lookup[idx] = np.arange(len(idx))
        labels = [self.parent.label(a) for a in self.elements]
        name = f"subgroup of order {self.order} in {self.parent.name or '?'}"
        return FiniteGroup(lookup[sub], labels=labels, name=name)

    def conjugate(self, g: int) -> "SubgroupRef":
        """The subgroup g H g^-1."""
        C = self.parent.conjugation_table
        return SubgroupRef(self.parent, tuple(sorted(set(C[g, list(self.elements)].tolist()))))

    @cached_property
    def is_normal(self) -> bool:
        """True when every conjugate equals the subgroup itself."""
        C = self.parent.conjugation_table
        return bool(np.isin(C[:, list(self.elements)], self.elements).all())


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups."""

    representative: SubgroupRef
    conjugates: Tuple[SubgroupRef, ...]

    @property
    def order(self) -> int:
        """Order of the subgroups in the class."""
        return self.representative.order

    @property
    def size(self) -> int:
        """Number of conjugates."""
        return len(self.conjugates)


@dataclass
class SubgroupClassTable:
    """Conjugacy classes of subgroups, sorted by (order, representative elements)."""

    group: FiniteGroup
    classes: List[SubgroupClass]
    _lookup: Dict[FrozenSet[int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        """Index every conjugate."""
        for i, cls in enumerate(self.classes):
            for H in cls.conjugates:
                self._lookup[frozenset(H.elements)] = i

    @property
    def h(self) -> int:
        """Number of classes."""
        return len(self.classes)

    def __len__(self) -> int:
        """Number of classes."""
        return len(self.classes)

    def __getitem__(self, i: int) -> SubgroupClass:
        """The i-th class."""
        return self.classes[i]

    def class_of(self, H) -> int:
        """
        Index of the class containing a subgroup.

        :param H: SubgroupRef or iterable of parent elements.
        """
        elements = H.elements if isinstance(H, SubgroupRef) else H
        try:
            return self._lookup[frozenset(elements)]
        except KeyError as err:
            raise SpecError("not a subgroup of this group") from err

    @property
    def representatives(self) -> List[SubgroupRef]:
        """One subgroup per class."""
        return [cls.representative for cls in self.classes]

    @property
    def subgroup_count(self) -> int:
        """Total number of subgroups."""
        return sum(cls.size for cls in self.classes)


def all_subgroups(G: FiniteGroup) -> List[FrozenSet[int]]:
    """
    All subgroups by cyclic extension: start from the cyclic subgroups and
    repeatedly join each subgroup with one more element.

    :param G: Group.
    :return: Subgroups as frozensets of element indices.
    """
    gens_of: Dict[FrozenSet[int], Tuple[int, ...]] = {}
    for a in range(G.order):
        H = frozenset(G.closure([a]))
        gens_of.setdefault(H, (a,) if a else ())
    frontier = list(gens_of)
    while frontier:
        new = []
        for H in frontier:
            gens = gens_of[H]
            for g in range(1, G.order):
                if g in H:
                    continue
                K = frozenset(G.closure(gens + (g,)))
                if K not in gens_of:
                    gens_of[K] = gens + (g,)
                    new.append(K)
        frontier = new
    return list(gens_of)


@lru_cache(maxsize=64)
def _subgroup_classes(G: FiniteGroup) -> SubgroupClassTable:
    C = G.conjugation_table
    remaining = set(all_subgroups(G))
    classes = []
    while remaining:
        H = next(iter(remaining))
        rows = np.sort(C[:, sorted(H)], axis=1)
        conjugates = sorted({tuple(row) for row in rows.tolist()})
        remaining -= {frozenset(c) for c in conjugates}
        refs = tuple(SubgroupRef(G, c) for c in conjugates)
        classes.append(SubgroupClass(representative=refs[0], conjugates=refs))
    classes.sort(key=lambda cls: (cls.order, cls.representative.elements))
    logging.info(f"{G.name or 'group'}: {len(classes)} conjugacy classes of subgroups")
    return SubgroupClassTable(G, classes)


def subgroup_classes(G: FiniteGroup, budgets: Budgets = DEFAULT_BUDGETS) -> SubgroupClassTable:
    """
    Conjugacy classes of subgroups of G.

    The representative of a class is its lexicographically least member; classes are
    ordered by increasing order, then by representative, so class 0 is the trivial
    subgroup and the last class is G.

    :param G: Group.
    :param budgets: Size limits (``max_subgroup_order``).
    :return: SubgroupClassTable.
    """
    budgets.check("max_subgroup_order", G.order)
    return _subgroup_classes(G)


def whole_group(G: FiniteGroup) -> SubgroupRef:
    """G as a subgroup of itself."""
    return SubgroupRef(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> SubgroupRef:
    """The trivial subgroup."""
    return SubgroupRef(G, (0,))


def prime_power_part(n: int, prime: int) -> int:
    """Largest power of ``prime`` dividing n."""
    part = 1
    while n % prime == 0:
        n //= prime
        part *= prime
    return part


def sylow_subgroup(
    G: FiniteGroup, prime: int = 2, budgets: Budgets = DEFAULT_BUDGETS
) -> SubgroupRef:
    """
    A Sylow subgroup: the representative of the first class of the right order.

    :param G: Group.
    :param prime: Prime.
    :param budgets: Size limits.
    """
    target = prime_power_part(G.order, prime)
    if target == 1:
        return trivial_subgroup(G)
    for cls in subgroup_classes(G, budgets).classes:
        if cls.order == target:
            return cls.representative
    raise SpecError(f"no subgroup of order {target} found")


def sylow2(G: FiniteGroup, budgets: Budgets = DEFAULT_BUDGETS) -> SubgroupRef:
    """A Sylow 2-subgroup of G."""
    return sylow_subgroup(G, 2, budgets)


def is_p_group(order: int, prime: int) -> bool:
    """True when order is a power of prime (1 included)."""
    return prime_power_part(order, prime) == order


def derived_subgroup(G: FiniteGroup, elements: Tuple[int, ...]) -> Tuple[int, ...]:
    """Commutator subgroup of the subgroup with the given elements."""
    T, inv = G.table, G.inverse
    a = np.asarray(elements, dtype=np.int64)
    ab = T[a[:, None], a[None, :]]
    comm = T[T[ab, inv[a][:, None]], inv[a][None, :]]
    return G.closure(set(comm.ravel().tolist()))


def is_solvable(G: FiniteGroup) -> bool:
    """Derived series reaches the trivial group."""
    current = tuple(range(G.order))
    while len(current) > 1:
        nxt = derived_subgroup(G, current)
        if nxt == current:
            return False
        current = nxt
    return True
