"""
The ten epsilon-hermitian cases over a real closed field and its division algebras.

Cases whose invariant is a signature are diagonalized by exact congruence; the
skew cases over k(i) and the quaternion cases with the orthogonal involution are
first moved to a base case by left multiplication with i^-1. Forms in the other
cases are classified by rank.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Rational
from sympy.algebras.quaternion import Quaternion

from gtrace.errors import InvariantError, SpecError
from gtrace.realclosed.scalars import (
    COMPLEX,
    CONJUGATION,
    HYPERBOLIC,
    I,
    ONE,
    ORTHOGONAL,
    QUATERNION,
    REAL,
    TRIVIAL,
    ZERO,
    ExactMatrix,
    add,
    as_matrix,
    block_diag,
    congruence,
    identity,
    in_ring,
    inverse,
    involution,
    is_invertible,
    is_zero,
    left_scale,
    mat_mul,
    mul,
    neg,
    real_part,
    ring_units,
    same_matrix,
    scalar,
    star,
)

SIGNATURE = "signature"
RANK = "rank"
ALTERNATING = "alternating"

Z = "Z"
Z2 = "Z/2"
ZERO_GROUP = "0"


@dataclass(frozen=True)
class CaseDescriptor:
    """A division ring with involution and a sign epsilon."""

    name: str
    ring: str
    involution: str
    epsilon: int
    invariant: str
    reduces_to: Optional[str] = None

    @property
    def shape(self) -> str:
        """``Z+Z`` for signature-valued cases, ``Z`` for rank-valued ones."""
        return "Z+Z" if self.invariant == SIGNATURE else "Z"


CASES: Dict[str, CaseDescriptor] = {
    c.name: c
    for c in [
        CaseDescriptor("real_symmetric", REAL, TRIVIAL, 1, SIGNATURE),
        CaseDescriptor("real_alternating", REAL, TRIVIAL, -1, ALTERNATING),
        CaseDescriptor("complex_symmetric", COMPLEX, TRIVIAL, 1, RANK),
        CaseDescriptor("complex_alternating", COMPLEX, TRIVIAL, -1, ALTERNATING),
        CaseDescriptor("complex_hermitian", COMPLEX, CONJUGATION, 1, SIGNATURE),
        CaseDescriptor(
            "complex_skew_hermitian", COMPLEX, CONJUGATION, -1, SIGNATURE, "complex_hermitian"
        ),
        CaseDescriptor("quaternion_hermitian", QUATERNION, HYPERBOLIC, 1, SIGNATURE),
        CaseDescriptor("quaternion_skew_hermitian", QUATERNION, HYPERBOLIC, -1, RANK),
        CaseDescriptor(
            "quaternion_orthogonal_hermitian",
            QUATERNION,
            ORTHOGONAL,
            1,
            RANK,
            "quaternion_skew_hermitian",
        ),
        CaseDescriptor(
            "quaternion_orthogonal_skew_hermitian",
            QUATERNION,
            ORTHOGONAL,
            -1,
            SIGNATURE,
            "quaternion_hermitian",
        ),
    ]
}


def get_case(name: str) -> CaseDescriptor:
    """Look a case up by name."""
    if name not in CASES:
        raise SpecError(f"unknown case {name!r}, expected one of {list(CASES)}")
    return CASES[name]


@dataclass(frozen=True)
class ExactForm:
    """An invertible Gram matrix B with ``star(B) = eps B`` under the case involution."""

    case: CaseDescriptor
    gram: ExactMatrix

    def __post_init__(self):
        """Check ring membership, the hermitian symmetry and invertibility."""
        B = as_matrix(self.gram)
        n = len(B)
        if any(len(row) != n for row in B):
            raise SpecError("Gram matrix must be square")
        c = self.case
        if not all(in_ring(x, c.ring) for row in B for x in row):
            raise SpecError(f"entries outside the {c.ring} ring")
        expected = B if c.epsilon == 1 else as_matrix([[neg(x) for x in row] for row in B])
        if not same_matrix(star(B, c.involution), expected):
            raise InvariantError(f"Gram matrix is not {c.epsilon:+d}-hermitian for {c.name}")
        if not is_invertible(B):
            raise InvariantError("Gram matrix is singular")
        if c.invariant == ALTERNATING and n % 2:
            raise InvariantError("alternating forms have even rank")
        object.__setattr__(self, "gram", B)

    @property
    def dim(self) -> int:
        """Rank over the division ring."""
        return len(self.gram)


@dataclass(frozen=True)
class FormInvariant:
    """Rank, or (positive, negative) counts, with the Witt class they determine."""

    shape: str
    values: Tuple[int, ...]
    witt: int

    def to_dict(self):
        """Plain-data view."""
        return {"shape": self.shape, "values": list(self.values), "witt": self.witt}


def make_form(case: str, rows: Sequence[Sequence]) -> ExactForm:
    """Build a form from rows of scalars or rationals."""
    c = get_case(case)
    rows = [[x if isinstance(x, Quaternion) else scalar(x) for x in r] for r in rows]
    return ExactForm(c, as_matrix(rows))


def reduce_form(f: ExactForm) -> ExactForm:
    """Move a form to its base case by ``B -> i^-1 B``; other forms are returned unchanged."""
    if f.case.reduces_to is None:
        return f
    return ExactForm(CASES[f.case.reduces_to], left_scale(inverse(I), f.gram))


def _pivot_scalar(B: ExactMatrix, k: int, l: int, kind: str, epsilon: int, ring: str):
    for c in ring_units(ring):
        x = mul(B[k][l], c)
        sx = involution(x, kind)
        value = add(x, sx) if epsilon == 1 else add(x, neg(sx))
        if not is_zero(value):
            return c
    return None


def _elementary(n: int, row: int, col: int, value) -> ExactMatrix:
    rows = [list(r) for r in identity(n)]
    rows[row][col] = value
    return as_matrix(rows)


def diagonalize(f: ExactForm) -> Tuple[ExactMatrix, List]:
    """
    P with ``star(P) B P`` diagonal, by symmetric elimination.

    :param f: Form in a case that is not alternating.
    :return: (P, diagonal entries); the congruence is checked exactly.
    """
    c = f.case
    if c.invariant == ALTERNATING:
        raise SpecError(f"{c.name} forms have no diagonal form")
    kind, eps = c.involution, c.epsilon
    B = f.gram
    n = len(B)
    P = identity(n)
    for k in range(n):
        if is_zero(B[k][k]):
            pivot = next((l for l in range(k + 1, n) if not is_zero(B[l][l])), None)
            if pivot is not None:
                swap = [list(r) for r in identity(n)]
                swap[k][k] = swap[pivot][pivot] = ZERO
                swap[k][pivot] = swap[pivot][k] = ONE
                step = as_matrix(swap)
            else:
                l = next((l for l in range(k + 1, n) if not is_zero(B[k][l])), None)
                if l is None:
                    raise InvariantError("zero row in a nonsingular form")
                # e_k <- e_k + e_l c
                cval = _pivot_scalar(B, k, l, kind, eps, c.ring)
                if cval is None:
                    raise InvariantError("no pivot scalar for a non-alternating form")
                step = _elementary(n, l, k, cval)
            B = congruence(B, step, kind)
            P = mat_mul(P, step)
        inv = inverse(B[k][k])
        for l in range(k + 1, n):
            if is_zero(B[k][l]):
                continue
            step = _elementary(n, k, l, neg(mul(inv, B[k][l])))
            B = congruence(B, step, kind)
            P = mat_mul(P, step)
    if not same_matrix(congruence(f.gram, P, kind), B):
        raise InvariantError("diagonalization does not reproduce the congruent Gram matrix")
    if any(not is_zero(B[i][j]) for i in range(n) for j in range(n) if i != j):
        raise InvariantError("elimination left off-diagonal entries")
    return P, [B[i][i] for i in range(n)]


def classify_case(f: ExactForm) -> FormInvariant:
    """
    The complete invariant of a form in its case.

    :param f: Form.
    :return: Signature (positive, negative) for signature cases, rank otherwise.
    """
    c = f.case
    if c.invariant == SIGNATURE:
        base = reduce_form(f)
        _, diag = diagonalize(base)
        signs = [real_part(x) for x in diag]
        if any(not in_ring(x, REAL) for x in diag):
            raise InvariantError("hermitian diagonal entries are not in k")
        pos = sum(1 for s in signs if s > 0)
        neg_count = sum(1 for s in signs if s < 0)
        return FormInvariant("Z+Z", (pos, neg_count), pos - neg_count)
    if c.invariant == ALTERNATING:
        return FormInvariant("Z", (f.dim,), 0)
    base = reduce_form(f)
    diagonalize(base)
    return FormInvariant("Z", (f.dim,), f.dim % 2)


def witt_class_case(f: ExactForm) -> int:
    """Image of f in the Witt group of its case (an integer, read mod 2 for Z/2 cases)."""
    return classify_case(f).witt


def is_isometric_exact(f: ExactForm, g: ExactForm) -> bool:
    """Isometry, decided by equality of the complete invariants."""
    if f.case != g.case:
        raise SpecError(f"forms of different cases: {f.case.name} vs {g.case.name}")
    return classify_case(f) == classify_case(g)


def orthogonal_sum_exact(f: ExactForm, g: ExactForm) -> ExactForm:
    """f + g."""
    if f.case != g.case:
        raise SpecError("orthogonal sum of forms of different cases")
    return ExactForm(f.case, block_diag(f.gram, g.gram))


def n_fold_exact(f: ExactForm, n: int) -> ExactForm:
    """n copies of f."""
    if n < 1:
        raise SpecError("n must be positive")
    out = f
    for _ in range(n - 1):
        out = orthogonal_sum_exact(out, f)
    return out


def hyperbolic_exact(case: str) -> ExactForm:
    """The hyperbolic plane [[0, 1], [eps, 0]]."""
    c = get_case(case)
    eps = ONE if c.epsilon == 1 else neg(ONE)
    return ExactForm(c, as_matrix([[ZERO, ONE], [eps, ZERO]]))


def check_division(f: ExactForm, g: ExactForm, n: int) -> Optional[bool]:
    """
    Division by n: when n f and n g are isometric, f and g must be.

    :return: None when the hypothesis fails, otherwise whether the conclusion holds.
    """
    if not is_isometric_exact(n_fold_exact(f, n), n_fold_exact(g, n)):
        return None
    return is_isometric_exact(f, g)


# -- samples ----------------------------------------------------------------------


def _random_scalar(rng: np.random.Generator, ring: str, low: int = -3, high: int = 4):
    parts = [int(v) for v in rng.integers(low, high, size=4)]
    den = int(rng.integers(1, 3))
    parts = [Rational(v, den) for v in parts]
    if ring == REAL:
        parts[1:] = [0, 0, 0]
    elif ring == COMPLEX:
        parts[2:] = [0, 0]
    return scalar(*parts)


def _nonzero(rng: np.random.Generator, ring: str, pred=lambda x: True):
    while True:
        x = _random_scalar(rng, ring)
        if not is_zero(x) and pred(x):
            return x


def _base_diagonal(case: CaseDescriptor, rng: np.random.Generator) -> object:
    """A diagonal entry valid in a non-alternating base case."""
    if case.epsilon == 1 and case.involution != TRIVIAL:
        return scalar(_nonzero(rng, REAL).a)
    if case.epsilon == 1:
        return _nonzero(rng, case.ring)
    # skew-hermitian for the standard involution: pure quaternions
    x = _nonzero(rng, case.ring, lambda y: not all(v == 0 for v in (y.b, y.c, y.d)))
    return scalar(0, x.b, x.c, x.d)


def random_form(case: str, dim: int, rng: np.random.Generator) -> ExactForm:
    """
    A random form of the case: a diagonal (or alternating block) form, moved by a
    random congruence; reduced cases are built as i times a base-case form.
    """
    c = get_case(case)
    if c.reduces_to is not None:
        base = random_form(c.reduces_to, dim, rng)
        return ExactForm(c, left_scale(I, base.gram))
    if c.invariant == ALTERNATING:
        if dim % 2:
            raise SpecError("alternating forms have even rank")
        B: ExactMatrix = ()
        for _ in range(dim // 2):
            a = _nonzero(rng, c.ring)
            B = block_diag(B, as_matrix([[ZERO, a], [neg(a), ZERO]]))
        f = ExactForm(c, B)
    else:
        rows = [[ZERO] * dim for _ in range(dim)]
        for i in range(dim):
            rows[i][i] = _base_diagonal(c, rng)
        f = ExactForm(c, as_matrix(rows))
    return random_congruence(f, rng)


def random_congruence(f: ExactForm, rng: np.random.Generator) -> ExactForm:
    """star(P) B P for a random invertible P with small entries in the ring."""
    n = f.dim
    while True:
        P = as_matrix(
            [[_random_scalar(rng, f.case.ring, -1, 2) for _ in range(n)] for _ in range(n)]
        )
        if is_invertible(P):
            return ExactForm(f.case, congruence(f.gram, P, f.case.involution))


def witt_group_of_case(case: str, rng: np.random.Generator, samples: int = 6) -> str:
    """
    Name of the Witt group of a case (``Z``, ``Z/2`` or ``0``), inferred from samples.

    Classes of generated forms are all zero for ``0``; a nonzero class killed by
    doubling marks ``Z/2``; otherwise ``Z``.
    """
    c = get_case(case)
    dims = [2, 4] if c.invariant == ALTERNATING else [1, 2, 3]
    classes = []
    for i in range(samples):
        f = random_form(case, dims[i % len(dims)], rng)
        w = witt_class_case(f)
        if w:
            classes.append((w, witt_class_case(orthogonal_sum_exact(f, f))))
    if witt_class_case(hyperbolic_exact(case)) != 0:
        raise InvariantError(f"hyperbolic plane has a nonzero class in {case}")
    logging.info(f"{case}: Witt classes {classes}")
    if not classes:
        return ZERO_GROUP
    if all(double == 0 for _, double in classes):
        return Z2
    return Z
