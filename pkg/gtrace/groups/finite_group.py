"""Finite groups as explicit multiplication tables."""

import logging
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, InvariantError, SpecError

Perm = Tuple[int, ...]

NAMED_RE = re.compile(r"^(?P<family>[CDSA])\s*(?P<n>\d+)$|^(?P<special>Q8|V4)$", re.IGNORECASE)
CYCLE_RE = re.compile(r"\(([^()]*)\)")


class FiniteGroup:
    """
    A group on the elements ``0 .. order-1`` with identity 0.

    ``table[a][b]`` is the index of the product ``a b``. Groups built from
    permutations keep them in ``perms``; ``perms[a]`` is the permutation of
    ``0 .. degree-1`` represented by element a, and products compose right to left.
    """

    def __init__(
        self,
        table,
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
        perms: Optional[np.ndarray] = None,
        check_associativity: bool = False,
    ):
        """
        Instantiate FiniteGroup and verify the group axioms.

        :param table: order x order index matrix.
        :param labels: Optional element names.
        :param name: Optional group name.
        :param perms: Optional permutation realization.
        :param check_associativity: Check all triples (needed for user-supplied tables).
        """
        T = np.array(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise SpecError(f"multiplication table must be square and nonempty, got {T.shape}")
        n = T.shape[0]
        if T.min() < 0 or T.max() >= n:
            raise SpecError("multiplication table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise SpecError("element 0 is not the identity")
        if not all(len(set(row)) == n for row in T.tolist()):
            raise SpecError("multiplication table is not a Latin square")
        inverse = np.argmax(T == 0, axis=1)
        if not np.all(T[ar, inverse] == 0):
            raise SpecError("some element has no inverse")
        if check_associativity and not np.array_equal(T[T], T[:, T]):
            raise SpecError("multiplication table is not associative")
        T.setflags(write=False)
        inverse.setflags(write=False)
        self.table = T
        self.inverse = inverse
        self.order = n
        self.name = name
        self.perms = perms
        self.labels = list(labels) if labels is not None else [str(a) for a in range(n)]
        if len(self.labels) != n:
            raise SpecError("one label per element is required")

    def __repr__(self) -> str:
        """Short description."""
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __eq__(self, other) -> bool:
        """Groups are equal when their tables are equal."""
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or (
            self.order == other.order and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        """Hash of the table."""
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def mul(self, a: int, b: int) -> int:
        """Product a b."""
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        """Inverse of a."""
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        """a^k for k >= 0."""
        result = 0
        for _ in range(k):
            result = int(self.table[result, a])
        return result

    def element_order(self, a: int) -> int:
        """Order of the element a."""
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    def conjugate(self, g: int, a: int) -> int:
        """g a g^-1."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    @cached_property
    def conjugation_table(self) -> np.ndarray:
        """``C[g, a] = g a g^-1`` for all g, a."""
        T = self.table
        return T[T, self.inverse[:, None]]

    def closure(self, gens: Iterable[int]) -> Tuple[int, ...]:
        """
        Subgroup generated by the given elements.

        :param gens: Element indices.
        :return: Sorted element tuple.
        """
        gens = [int(g) for g in gens if int(g) != 0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """Deterministic small generating set, chosen greedily by descending element order."""
        order = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        gens: List[int] = []
        span = {0}
        for a in order:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = set(self.closure(gens))
        return tuple(gens)

    @cached_property
    def is_abelian(self) -> bool:
        """True when the table is symmetric."""
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, a: int) -> str:
        """Human-readable element name."""
        return self.labels[a]


@dataclass(frozen=True)
class GroupDescription:
    """Parsed group description."""

    kind: str
    name: Optional[str] = None
    gens: Tuple[Perm, ...] = ()
    degree: int = 1
    table: Optional[Tuple[Tuple[int, ...], ...]] = None


def parse_cycles(text: str, line: Optional[int] = None) -> List[List[int]]:
    """
    Parse cycle notation such as ``(1 2)(3 4)`` into 1-based cycles.

    :param text: One permutation in cycle notation.
    :param line: Line number for error messages.
    """
    text = text.strip()
    if not text:
        raise SpecError("empty permutation", line)
    leftover = CYCLE_RE.sub("", text).strip()
    if leftover:
        raise SpecError(f"unexpected text in cycle notation: {leftover!r}", line)
    cycles = []
    for body in CYCLE_RE.findall(text):
        pts = [tok for tok in re.split(r"[\s,]+", body.strip()) if tok]
        try:
            cycle = [int(tok) for tok in pts]
        except ValueError as err:
            raise SpecError(f"bad point in cycle ({body})", line) from err
        if any(pt < 1 for pt in cycle) or len(set(cycle)) != len(cycle):
            raise SpecError(f"bad cycle ({body})", line)
        cycles.append(cycle)
    return cycles


def cycles_to_perm(cycles: List[List[int]], degree: int) -> Perm:
    """Convert 1-based cycles into a 0-based image tuple of the given degree."""
    img = list(range(degree))
    seen = set()
    for cycle in cycles:
        for pt in cycle:
            if pt in seen:
                raise SpecError(f"point {pt} occurs in two cycles")
            seen.add(pt)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def perm_to_cycles(perm: Sequence[int]) -> str:
    """1-based cycle notation, ``()`` for the identity."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(str(pt) for pt in cycle) + ")")
    return "".join(out) or "()"


def _named_generators(family: str, n: int) -> List[List[List[int]]]:
    if family == "C":
        if n < 1:
            raise SpecError("C n requires n >= 1")
        return [[list(range(1, n + 1))]] if n > 1 else []
    if family == "D":
        if n < 2:
            raise SpecError("D n requires n >= 2")
        if n == 2:
            return _named_generators("V", 4)
        rotation = [list(range(1, n + 1))]
        reflection = [[i, n + 1 - i] for i in range(1, n // 2 + 1)]
        return [rotation, reflection]
    if family == "S":
        if n < 1:
            raise SpecError("S n requires n >= 1")
        if n == 1:
            return []
        if n == 2:
            return [[[1, 2]]]
        return [[[1, 2]], [list(range(1, n + 1))]]
    if family == "A":
        if n < 1:
            raise SpecError("A n requires n >= 1")
        return [[[1, 2, k]] for k in range(3, n + 1)]
    if family == "V":
        return [[[1, 2], [3, 4]], [[1, 3], [2, 4]]]
    if family == "Q":
        return [[[1, 2, 3, 4], [5, 6, 7, 8]], [[1, 5, 3, 7], [2, 8, 4, 6]]]
    raise SpecError(f"unknown group family {family!r}")


def named_description(name: str, line: Optional[int] = None) -> GroupDescription:
    """
    Description of a named family member: ``C n``, ``D n``, ``S n``, ``A n``, ``Q8`` or ``V4``.

    :param name: Family name, with or without a space before n.
    :param line: Line number for error messages.
    """
    match = NAMED_RE.match(name.strip())
    if not match:
        raise SpecError(f"unknown named group {name!r}", line)
    if match.group("special"):
        special = match.group("special").upper()
        gens = _named_generators(special[0], int(special[1]))
        canonical = special
    else:
        family, n = match.group("family").upper(), int(match.group("n"))
        gens = _named_generators(family, n)
        canonical = f"{family}{n}"
    degree = max([1] + [pt for g in gens for cyc in g for pt in cyc])
    if canonical[0] in "SCA":
        degree = max(degree, int(canonical[1:]))
    perms = tuple(cycles_to_perm(g, degree) for g in gens)
    return GroupDescription(kind="named", name=canonical, gens=perms, degree=degree)


def parse_group_description(text: str) -> GroupDescription:
    """
    Parse the group text format.

    Accepted forms (a leading ``group`` line and ``#`` comments are optional)::

        named: S 3
        gens: (1 2); (1 2 3)
        table:
        0 1
        1 0

    A bare family name such as ``S3`` is also accepted.

    :param text: File contents or a one-line description.
    :return: GroupDescription.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    if lines and lines[0][1].lower() == "group":
        lines = lines[1:]
    if not lines:
        raise SpecError("empty group description")
    lineno, head = lines[0]
    key, _, value = head.partition(":")
    key = key.strip().lower()
    if not _:
        return named_description(head, lineno)
    if key == "named":
        return named_description(value, lineno)
    if key == "gens":
        cycle_lists = [parse_cycles(chunk, lineno) for chunk in value.split(";") if chunk.strip()]
        degree = max([1] + [pt for cl in cycle_lists for cyc in cl for pt in cyc])
        perms = tuple(cycles_to_perm(cl, degree) for cl in cycle_lists)
        return GroupDescription(kind="gens", gens=perms, degree=degree)
    if key == "table":
        rows = []
        body = ([(lineno, value)] if value.strip() else []) + lines[1:]
        for rowno, row in body:
            try:
                rows.append(tuple(int(tok) for tok in row.split()))
            except ValueError as err:
                raise SpecError("table rows must be integers", rowno) from err
        return GroupDescription(kind="table", table=tuple(rows))
    raise SpecError(f"unknown group description key {key!r}", lineno)


def _perm_keys(P: np.ndarray) -> Tuple[np.ndarray, Optional[Dict]]:
    degree = P.shape[1]
    if degree <= 15:
        weights = degree ** np.arange(degree, dtype=np.int64)
        return P @ weights, None
    return None, {tuple(row): i for i, row in enumerate(P.tolist())}


def group_from_perms(
    gens: Sequence[Perm],
    degree: int,
    name: Optional[str] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> FiniteGroup:
    """
    Close permutation generators breadth-first and tabulate the group.

    Element i is the i-th permutation reached from the identity by right
    multiplication with the generators, taken in the given order.

    :param gens: 0-based image tuples.
    :param degree: Number of points.
    :param name: Optional group name.
    :param budgets: Size limits.
    """
    identity = tuple(range(degree))
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if sorted(g) != list(identity):
            raise SpecError(f"generator {g} is not a permutation of {degree} points")
    elements = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = tuple(x[g[pt]] for pt in range(degree))
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                if len(elements) > budgets.max_group_order:
                    raise BudgetExceededError(
                        "max_group_order", len(elements), budgets.max_group_order
                    )
        i += 1
    P = np.array(elements, dtype=np.int64)
    n = len(elements)
    keys, lookup = _perm_keys(P)
    table = np.zeros((n, n), dtype=np.int64)
    if keys is not None:
        weights = degree ** np.arange(degree, dtype=np.int64)
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for a in range(n):
            table[a] = order[np.searchsorted(sorted_keys, P[a][P] @ weights)]
    else:
        for a in range(n):
            table[a] = [lookup[tuple(row)] for row in P[a][P].tolist()]
    labels = [perm_to_cycles(e) for e in elements]
    P.setflags(write=False)
    group = FiniteGroup(table, labels=labels, name=name, perms=P)
    logging.info(f"Built group {name or 'from generators'} of order {n}")
    return group


def build_group(
    spec: Union[str, GroupDescription, FiniteGroup], budgets: Budgets = DEFAULT_BUDGETS
) -> FiniteGroup:
    """
    Build a group from a named family, permutation generators or an explicit table.

    :param spec: Text description (see :func:`parse_group_description`) or a parsed one.
    :param budgets: Size limits.
    :return: FiniteGroup with identity 0.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    desc = parse_group_description(spec) if isinstance(spec, str) else spec
    if desc.kind in ("named", "gens"):
        return group_from_perms(desc.gens, desc.degree, name=desc.name, budgets=budgets)
    if desc.kind == "table":
        n = len(desc.table)
        budgets.check("max_table_order", n)
        if any(len(row) != n for row in desc.table):
            raise SpecError("multiplication table must be square")
        return FiniteGroup(desc.table, name=desc.name, check_associativity=True)
    raise InvariantError(f"unknown description kind {desc.kind}")


@lru_cache(maxsize=None)
def trivial_group() -> FiniteGroup:
    """The group of order 1."""
    return build_group("C1")
