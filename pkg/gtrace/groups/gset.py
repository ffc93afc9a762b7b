"""Finite G-sets as permutation actions."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from gtrace.errors import SpecError
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.subgroups import SubgroupRef


@dataclass(frozen=True, eq=False)
class GSet:
    """
    A finite left G-set on the points ``0 .. size-1``.

    ``action[g][x]`` is the image g·x.
    """

    group: FiniteGroup
    action: np.ndarray
    points: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        """Check that the rows are permutations and the map is a homomorphism on generators."""
        A = np.asarray(self.action, dtype=np.int64)
        if A.ndim != 2 or A.shape[0] != self.group.order:
            raise SpecError(f"action must have one row per group element, got shape {A.shape}")
        size = A.shape[1]
        ar = np.arange(size)
        if size and not np.array_equal(A[0], ar):
            raise SpecError("identity does not act trivially")
        if size and not np.array_equal(np.sort(A, axis=1), np.broadcast_to(ar, A.shape)):
            raise SpecError("action rows are not permutations")
        T = self.group.table
        for g in self.group.generators:
            if not np.array_equal(A[T[:, g]], A[:, A[g]]):
                raise SpecError("action is not compatible with the group law")
        A.setflags(write=False)
        object.__setattr__(self, "action", A)

    @property
    def size(self) -> int:
        """Number of points."""
        return self.action.shape[1]

    def __len__(self) -> int:
        """Number of points."""
        return self.size

    def orbits(self) -> List[Tuple[int, ...]]:
        """Orbits as sorted point tuples, ordered by least point."""
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if not seen[x]:
                orbit = np.unique(self.action[:, x])
                seen[orbit] = True
                out.append(tuple(int(y) for y in orbit))
        return out

    def stabilizer(self, x: int) -> SubgroupRef:
        """Stabilizer of the point x."""
        return SubgroupRef(self.group, tuple(int(g) for g in np.nonzero(self.action[:, x] == x)[0]))

    def fixed_points(self, H: Union[SubgroupRef, Sequence[int]]) -> int:
        """
        Number of points fixed by every element of H.

        :param H: SubgroupRef or parent element indices.
        """
        elements = list(H.elements if isinstance(H, SubgroupRef) else H)
        if not self.size:
            return 0
        rows = self.action[elements]
        return int(np.all(rows == np.arange(self.size), axis=0).sum())

    def disjoint_union(self, other: "GSet") -> "GSet":
        """Points of self first, then points of other shifted by ``self.size``."""
        self._same_group(other)
        return GSet(self.group, np.hstack([self.action, other.action + self.size]))

    def product(self, other: "GSet") -> "GSet":
        """Diagonal action on pairs; the pair (x, y) is point ``x * other.size + y``."""
        self._same_group(other)
        A = self.action[:, :, None] * other.size + other.action[:, None, :]
        return GSet(self.group, A.reshape(self.group.order, -1))

    def restrict_to(self, S: SubgroupRef) -> "GSet":
        """The same points with the action of S only (as ``S.as_group``)."""
        if S.parent != self.group:
            raise SpecError("restriction needs a subgroup of the acting group")
        return GSet(S.as_group, self.action[list(S.elements)])

    def _same_group(self, other: "GSet"):
        if other.group != self.group:
            raise SpecError("G-sets over different groups")


def regular_gset(G: FiniteGroup) -> GSet:
    """G acting on itself by left multiplication."""
    return GSet(G, G.table.copy())


def trivial_gset(G: FiniteGroup, size: int = 1) -> GSet:
    """size fixed points."""
    return GSet(G, np.tile(np.arange(size, dtype=np.int64), (G.order, 1)))


def left_cosets(G: FiniteGroup, H: SubgroupRef) -> List[Tuple[int, ...]]:
    """Left cosets gH as sorted tuples, ordered by least element."""
    T = G.table
    cosets = {tuple(sorted(T[g, list(H.elements)].tolist())) for g in range(G.order)}
    return sorted(cosets)


def coset_action(G: FiniteGroup, H: SubgroupRef) -> GSet:
    """
    The transitive G-set G/H; coset i is the i-th coset by least element.

    :param G: Group.
    :param H: Subgroup of G.
    """
    if H.parent != G:
        raise SpecError("H must be a subgroup of G")
    cosets = left_cosets(G, H)
    where = np.zeros(G.order, dtype=np.int64)
    for i, c in enumerate(cosets):
        where[list(c)] = i
    reps = np.array([c[0] for c in cosets], dtype=np.int64)
    action = where[G.table[:, reps]]
    labels = tuple(G.label(int(r)) + "H" for r in reps)
    return GSet(G, action, points=labels)
