"""
Splitting a semisimple algebra with involution into sigma-stable components.

Central primitive idempotents come from minimal polynomials of central elements
factored over F_p. Each component is either simple (sigma fixes its central
idempotent) or an exchanged pair A x A^op. Simple components get a primitive
idempotent by refining corners f E f with the same minimal-polynomial splitting.
"""

import logging
from dataclasses import dataclass
from math import isqrt
from typing import List, Optional

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.fields.polynomials import (
    Poly,
    factor_poly,
    poly_inv_mod,
    poly_mul,
    poly_quo,
)
from gtrace.hermitian.algebra import AlgebraWithInvolution, subalgebra
from gtrace.hermitian.radical import jacobson_radical, trace_ideal

CHUNK = 2**10

SIMPLE = "simple"
SWAP = "swap"
ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
UNITARY = "unitary"
EXCHANGE = "exchange"


def minimal_polynomial(E: AlgebraWithInvolution, y, unit) -> Poly:
    """
    Monic minimal polynomial of y over F_p inside the corner whose unit is ``unit``.

    :return: Coefficients high to low.
    """
    powers = [np.asarray(unit, dtype=np.int64) % E.p]
    y = np.asarray(y, dtype=np.int64) % E.p
    while True:
        nxt = E.mul(powers[-1], y) if len(powers) > 1 else y
        A = np.stack(powers).T
        c = linalg.solve(E.field, A, nxt)
        if c is not None:
            tail = [int(E.field.neg(int(v))) for v in reversed(c)]
            return [1] + tail
        powers.append(nxt)


def evaluate(E: AlgebraWithInvolution, f: Poly, y, unit) -> np.ndarray:
    """f(y) with constant term times ``unit``."""
    acc = np.zeros(E.dim, dtype=np.int64)
    for c in f:
        acc = E.add(E.mul(acc, y), E.scale(c, unit))
    return acc


def split_idempotents(
    E: AlgebraWithInvolution, y, unit, f: Optional[Poly] = None
) -> Optional[List[np.ndarray]]:
    """
    Orthogonal idempotents summing to ``unit`` from the coprime factors of the minimal polynomial.

    :param f: Minimal polynomial of y, computed when omitted.
    :return: One idempotent per distinct irreducible factor, or None when there is only one.
    """
    if f is None:
        f = minimal_polynomial(E, y, unit)
    _, factors = factor_poly(E.field, f)
    if len(factors) < 2:
        return None
    out = []
    for g, mult in factors:
        fk: Poly = [1]
        for _ in range(mult):
            fk = poly_mul(E.field, fk, g)
        gk = poly_quo(E.field, f, fk)
        h = poly_inv_mod(E.field, gk, fk)
        out.append(evaluate(E, poly_mul(E.field, gk, h), y, unit))
    return out


def center(E: AlgebraWithInvolution) -> np.ndarray:
    """Basis of {x : x b = b x for every basis element b}."""
    if E.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    T = E.structure
    blocks = [(T[:, j, :] - T[j, :, :]) % E.p for j in range(E.dim)]
    return linalg.nullspace(E.field, np.hstack(blocks).T)


def _span_times(E: AlgebraWithInvolution, basis, e) -> np.ndarray:
    return linalg.row_space(E.field, E.mul(basis, e)) if len(basis) else basis


def _scan(E: AlgebraWithInvolution, basis, budgets: Budgets):
    total = E.p ** len(basis)
    scanned = 0
    for start in range(1, total, CHUNK):
        for y in E.span_elements(basis, start, min(total, start + CHUNK)):
            scanned += 1
            if scanned > budgets.enumeration:
                raise BudgetExceededError("enumeration", scanned, budgets.enumeration)
            yield y


def central_idempotents(
    E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS
) -> List[np.ndarray]:
    """
    Central primitive idempotents of a semisimple algebra, sorted by enumeration index.

    :param E: Semisimple algebra.
    :param budgets: Bounds the scan for splitting elements.
    """
    if E.dim == 0:
        return []
    Z = center(E)
    work = [E.unit.copy()]
    done = []
    while work:
        e = work.pop()
        piece = _span_times(E, Z, e)
        if len(piece) == 1:
            done.append(e)
            continue
        for y in _scan(E, piece, budgets):
            f = minimal_polynomial(E, y, e)
            parts = split_idempotents(E, y, e, f)
            if parts is not None:
                work.extend(parts)
                break
            if len(f) - 1 == len(piece):
                done.append(e)
                break
        else:
            raise InvariantError("center piece neither splits nor is a field")
    return sorted(done, key=E.index_of)


@dataclass(frozen=True, eq=False)
class Component:
    """A sigma-stable two-sided factor of a semisimple algebra."""

    ambient: AlgebraWithInvolution
    kind: str
    involution: str
    idempotent: np.ndarray
    algebra: AlgebraWithInvolution
    coordinates: linalg.SubspaceCoordinates
    center_dim: int
    degree: int
    primitive: Optional[np.ndarray]

    def project(self, x) -> np.ndarray:
        """Component coordinates of x e, e the central idempotent (broadcasts over rows)."""
        return self.coordinates.coordinates(self.ambient.mul(x, self.idempotent))

    def embed(self, y) -> np.ndarray:
        """Ambient coordinates of a component element."""
        return self.coordinates.combine(np.asarray(y, dtype=np.int64))

    def class_count(self, epsilon: int) -> int:
        """Number of eps-hermitian classes of this factor."""
        if self.kind == SWAP or self.involution == UNITARY:
            return 1
        two = (self.involution == ORTHOGONAL) == (epsilon == 1)
        if two:
            return 2
        if self.involution == ORTHOGONAL and self.degree % 2:
            return 0
        return 1

    def to_dict(self):
        """Plain-data view."""
        return {
            "kind": self.kind,
            "involution": self.involution,
            "dim": self.algebra.dim,
            "center_dim": self.center_dim,
            "degree": self.degree,
        }


def left_ideal_dim(A: AlgebraWithInvolution, f) -> int:
    """dim A f."""
    return linalg.rank(A.field, A.mul(np.eye(A.dim, dtype=np.int64), f))


def primitive_idempotent(
    A: AlgebraWithInvolution, target: int, budgets: Budgets = DEFAULT_BUDGETS
) -> np.ndarray:
    """
    A primitive idempotent of a simple algebra, by corner refinement.

    :param A: Simple algebra.
    :param target: dim A f for primitive f (m times the center dimension).
    :param budgets: Bounds the scan of each corner.
    """
    f = A.unit.copy()
    basis = np.eye(A.dim, dtype=np.int64)
    while left_ideal_dim(A, f) > target:
        corner = linalg.row_space(A.field, A.mul(A.mul(f, basis), f))
        for y in _scan(A, corner, budgets):
            parts = split_idempotents(A, y, f)
            if parts is None:
                continue
            sized = [(left_ideal_dim(A, e), A.index_of(e), i) for i, e in enumerate(parts)]
            sized = [t for t in sized if t[0] > 0]
            f = parts[min(sized)[2]]
            break
        else:
            raise InvariantError("no splitting element in a non-primitive corner")
    return f


def split_semisimple(
    E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS, check: bool = True
) -> List[Component]:
    """
    Decompose a semisimple algebra with involution into sigma-stable components.

    :param E: Algebra with zero radical.
    :param budgets: Bounds every element scan.
    :param check: Recompute the radical to confirm that it is zero.
    :return: Components in order of their least central idempotent.
    :raises SpecError: When E has a nonzero radical.
    """
    if check and len(trace_ideal(E)) and len(jacobson_radical(E, budgets)):
        raise SpecError(f"{E.name} is not semisimple")
    idems = central_idempotents(E, budgets)
    Z = center(E)
    basis = np.eye(E.dim, dtype=np.int64)
    components = []
    seen = set()
    for i, e in enumerate(idems):
        if i in seen:
            continue
        se = E.involution(e)
        j = next(k for k, other in enumerate(idems) if np.array_equal(other, se))
        seen.update({i, j})
        piece = _span_times(E, Z, e)
        s = len(piece)
        dim_e = len(_span_times(E, basis, e))
        m = isqrt(dim_e // s)
        if m * m * s != dim_e:
            raise InvariantError("simple factor dimension is not s m^2")
        if j != i:
            idem = E.add(e, se)
            algebra, coords = subalgebra(E, E.mul(basis, idem), idem, name=f"{E.name}[swap {i}]")
            components.append(Component(E, SWAP, EXCHANGE, idem, algebra, coords, s, m, None))
            continue
        algebra, coords = subalgebra(E, E.mul(basis, e), e, name=f"{E.name}[{i}]")
        if not np.array_equal(E.involution(piece), piece):
            involution = UNITARY
        else:
            sym = len(algebra.hermitian_basis(1))
            if sym == s * m * (m + 1) // 2:
                involution = ORTHOGONAL
            elif sym == s * m * (m - 1) // 2:
                involution = SYMPLECTIC
            else:
                raise InvariantError(f"symmetric part of dimension {sym} fits no involution type")
        primitive = primitive_idempotent(algebra, m * s, budgets)
        logging.info(f"Component {i} of {E.name}: {involution}, degree {m}, center dimension {s}")
        components.append(
            Component(E, SIMPLE, involution, e, algebra, coords, s, m, primitive)
        )
    return components
