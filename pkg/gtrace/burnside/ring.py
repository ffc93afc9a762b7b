"""
The Burnside ring of a finite group, computed through its table of marks.

Elements are integer vectors on the basis ``b_{G/K}``, one basis element per
conjugacy class of subgroups in :class:`SubgroupClassTable` order. Products are
formed in ghost coordinates (marks multiply pointwise) and pulled back through the
triangular mark matrix with exact integer back-substitution.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from sympy import Matrix, Poly, Symbol, div, ilcm
from sympy.polys.domains import ZZ

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import CheckFailure, InvariantError, SpecError
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.gset import GSet, coset_action
from gtrace.groups.subgroups import SubgroupClassTable, is_p_group, subgroup_classes

T_SYMBOL = Symbol("t")


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    """An element of Burn(G) as integer coefficients on the class-ordered basis."""

    ring: "BurnsideRing"
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        """Check the coefficient count."""
        if len(self.coeffs) != self.ring.h:
            raise InvariantError(f"expected {self.ring.h} coefficients, got {len(self.coeffs)}")

    def __eq__(self, other) -> bool:
        """Same group and same coefficients."""
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.ring.group == other.ring.group and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        """Hash on group and coefficients."""
        return hash((self.ring.group, self.coeffs))

    def __repr__(self) -> str:
        """Coefficients with the group name."""
        return f"BurnsideElement({self.ring.group.name or '?'}, {list(self.coeffs)})"

    def _coerce(self, other) -> "BurnsideElement":
        if isinstance(other, int):
            return self.ring.one * other
        if not isinstance(other, BurnsideElement) or other.ring.group != self.ring.group:
            raise SpecError("Burnside elements over different groups")
        return other

    def __add__(self, other) -> "BurnsideElement":
        """Sum."""
        other = self._coerce(other)
        return self.ring.element([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "BurnsideElement":
        """Additive inverse."""
        return self.ring.element([-a for a in self.coeffs])

    def __sub__(self, other) -> "BurnsideElement":
        """Difference."""
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "BurnsideElement":
        """Product with an element or an integer."""
        if isinstance(other, int):
            return self.ring.element([a * other for a in self.coeffs])
        return self.ring.mul(self, other)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        """All coefficients vanish."""
        return not any(self.coeffs)

    @property
    def marks(self) -> Tuple[int, ...]:
        """Ghost coordinates."""
        return self.ring.marks_of(self)

    def to_dict(self) -> Dict:
        """Plain-data view."""
        return {"group": self.ring.group.name, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class SpectralData:
    """Ghost vector, characteristic polynomial and norm of an element."""

    element: BurnsideElement
    ghost: Tuple[int, ...]
    char_poly: Tuple[int, ...]
    norm: int

    def to_dict(self) -> Dict:
        """Plain-data view; polynomials as constant-first coefficient lists and strings."""
        return {
            "element": list(self.element.coeffs),
            "ghost": list(self.ghost),
            "char_poly": list(self.char_poly),
            "char_poly_str": format_int_poly(self.char_poly),
            "norm": self.norm,
        }


@dataclass(frozen=True)
class DivisionPolynomial:
    """``x F(x) = N 1`` in Burn(G)."""

    element: BurnsideElement
    F: Tuple[int, ...]
    N: int

    def to_dict(self) -> Dict:
        """Plain-data view."""
        return {"F": format_int_poly(self.F), "F_coeffs": list(self.F), "n": self.N}


@dataclass(frozen=True)
class Connectivity:
    """Outcome of the idempotent search."""

    connected: bool
    idempotent_count: int
    idempotent: Optional[BurnsideElement] = None

    def to_dict(self) -> Dict:
        """Plain-data view."""
        return {
            "connected": self.connected,
            "idempotents": self.idempotent_count,
            "witness": None if self.idempotent is None else list(self.idempotent.coeffs),
            "witness_ghost": None if self.idempotent is None else list(self.idempotent.marks),
        }


def format_int_poly(coeffs: Sequence[int], var: str = "t") -> str:
    """
    Render an integer polynomial, constant term first: ``4 - t``, ``3 - 4*t + t^2``.

    :param coeffs: Coefficients, constant term first.
    :param var: Variable name.
    """
    out = ""
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def _poly_coeffs_low(poly: Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


class BurnsideRing:
    """
    Burn(G) with its table of marks.

    ``marks[i][j]`` is the number of points of G/K_j fixed by H_i, rows and columns
    in class-table order, so the matrix is upper triangular.
    """

    def __init__(self, group: FiniteGroup, budgets: Budgets = DEFAULT_BUDGETS):
        """
        Build the class table and the table of marks.

        :param group: The group G.
        :param budgets: Size limits.
        """
        self.group = group
        self.budgets = budgets
        self.classes: SubgroupClassTable = subgroup_classes(group, budgets)
        self.basis_gsets: List[GSet] = [
            coset_action(group, cls.representative) for cls in self.classes.classes
        ]
        h = self.classes.h
        marks = [[0] * h for _ in range(h)]
        for j, X in enumerate(self.basis_gsets):
            for i, cls in enumerate(self.classes.classes):
                marks[i][j] = X.fixed_points(cls.representative)
        self.marks = marks
        self._check_marks()
        logging.info(f"Burnside ring of {group.name or 'group'}: rank {h}")

    def _check_marks(self):
        M = self.marks
        for j in range(self.h):
            if M[0][j] != self.group.order // self.classes[j].order:
                raise InvariantError("trivial subgroup mark differs from the index")
            for i in range(self.h):
                if self.classes[i].order > self.classes[j].order and M[i][j]:
                    raise InvariantError(f"mark table not triangular at ({i}, {j})")
            if M[j][j] == 0:
                raise InvariantError(f"zero diagonal mark at {j}")

    @property
    def h(self) -> int:
        """Rank of Burn(G), the number of subgroup classes."""
        return self.classes.h

    def __repr__(self) -> str:
        """Short description."""
        return f"BurnsideRing({self.group.name or '?'}, h={self.h})"

    def class_label(self, i: int) -> str:
        """Label of the i-th subgroup class."""
        return f"H{i}[{self.classes[i].order}]"

    def mark_frame(self) -> pd.DataFrame:
        """Table of marks with subgroup classes as rows and basis elements as columns."""
        labels = [self.class_label(i) for i in range(self.h)]
        return pd.DataFrame(
            self.marks,
            index=pd.Index(labels, name="subgroup"),
            columns=[f"b_G/{label}" for label in labels],
        )

    # -- elements --------------------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> BurnsideElement:
        """Element with the given coefficients."""
        return BurnsideElement(self, tuple(int(c) for c in coeffs))

    def basis(self, j: int) -> BurnsideElement:
        """The basis element b_{G/K_j}."""
        coeffs = [0] * self.h
        coeffs[j] = 1
        return self.element(coeffs)

    def basis_elements(self) -> List[BurnsideElement]:
        """All basis elements in class order."""
        return [self.basis(j) for j in range(self.h)]

    @property
    def one(self) -> BurnsideElement:
        """The unit b_{G/G}."""
        return self.basis(self.h - 1)

    @property
    def zero(self) -> BurnsideElement:
        """Zero."""
        return self.element([0] * self.h)

    def decompose_gset(self, X: GSet) -> BurnsideElement:
        """
        Orbit decomposition: each orbit adds 1 to the class of its stabilizers.

        :param X: G-set over this ring's group.
        """
        if X.group != self.group:
            raise SpecError("G-set over a different group")
        coeffs = [0] * self.h
        for orbit in X.orbits():
            coeffs[self.classes.class_of(X.stabilizer(orbit[0]))] += 1
        return self.element(coeffs)

    # -- ghost coordinates -----------------------------------------------------

    def marks_of(self, x: BurnsideElement) -> Tuple[int, ...]:
        """Ghost vector (f_H(x)) over subgroup classes."""
        M = self.marks
        return tuple(
            sum(M[i][j] * c for j, c in enumerate(x.coeffs) if c) for i in range(self.h)
        )

    def pullback(self, ghost: Sequence[int]) -> Optional[BurnsideElement]:
        """
        Element with the given ghost vector, or None when it is not integral.

        :param ghost: Integer vector indexed by subgroup class.
        """
        M = self.marks
        coeffs = [0] * self.h
        for i in range(self.h - 1, -1, -1):
            rest = int(ghost[i]) - sum(M[i][j] * coeffs[j] for j in range(i + 1, self.h))
            c, r = divmod(rest, M[i][i])
            if r:
                return None
            coeffs[i] = c
        return self.element(coeffs)

    def mul(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        """
        Product via ghost coordinates.

        :raises InvariantError: When the pullback is not integral.
        """
        if x.ring.group != self.group or y.ring.group != self.group:
            raise SpecError("Burnside elements over different groups")
        gx, gy = self.marks_of(x), self.marks_of(y)
        result = self.pullback([a * b for a, b in zip(gx, gy)])
        if result is None:
            raise InvariantError(f"non-integral product of {x} and {y}")
        return result

    def evaluate(self, coeffs: Sequence[int], x: BurnsideElement) -> BurnsideElement:
        """
        Evaluate an integer polynomial at x inside Burn(G) by Horner's rule.

        :param coeffs: Coefficients, constant term first.
        :param x: Element.
        """
        acc = self.zero
        for c in reversed(list(coeffs)):
            acc = acc * x + self.one * int(c)
        return acc

    # -- spectral data ---------------------------------------------------------

    def spectral(self, x: BurnsideElement) -> SpectralData:
        """
        Characteristic polynomial ``prod (t - f_H(x))`` and norm ``prod f_H(x)``.

        The Cayley-Hamilton identity P_x(x) = 0 is evaluated in Burn(G) before returning.
        """
        ghost = self.marks_of(x)
        poly = Poly(1, T_SYMBOL, domain=ZZ)
        norm = 1
        for value in ghost:
            poly = poly * Poly(T_SYMBOL - value, T_SYMBOL, domain=ZZ)
            norm *= value
        char_poly = _poly_coeffs_low(poly)
        if not self.evaluate(char_poly, x).is_zero:
            raise InvariantError(f"characteristic polynomial does not annihilate {x}")
        if norm != (-1) ** self.h * char_poly[0]:
            raise InvariantError("norm differs from the constant term")
        return SpectralData(element=x, ghost=ghost, char_poly=char_poly, norm=norm)

    def division_polynomial(
        self, x: BurnsideElement, prime: Optional[int] = None, gset_size: Optional[int] = None
    ) -> DivisionPolynomial:
        """
        F_x with ``t F_x(t) = N(x) - (-1)^h P_x(t)``, so that ``x F_x(x) = N(x) 1``.

        :param x: Element.
        :param prime: Optional prime p; with ``gset_size`` prime to p and G a p-group,
            N(x) must be prime to p.
        :param gset_size: Cardinality of the G-set x comes from, if any.
        :return: DivisionPolynomial.
        """
        data = self.spectral(x)
        P = Poly(list(reversed(data.char_poly)), T_SYMBOL, domain=ZZ)
        numerator = Poly(data.norm, T_SYMBOL, domain=ZZ) - P * (-1) ** self.h
        quotient, remainder = div(numerator, Poly(T_SYMBOL, T_SYMBOL, domain=ZZ))
        if not remainder.is_zero:
            raise InvariantError("N(x) - (-1)^h P_x(t) is not divisible by t")
        F = _poly_coeffs_low(quotient) if not quotient.is_zero else (0,)
        if x * self.evaluate(F, x) != self.one * data.norm:
            raise InvariantError(f"x F(x) = N 1 fails for {x}")
        if (
            prime is not None
            and gset_size is not None
            and is_p_group(self.group.order, prime)
            and gset_size % prime
            and data.norm % prime == 0
        ):
            raise CheckFailure(
                "p-group norm prime to p", {"element": list(x.coeffs), "norm": data.norm}
            )
        return DivisionPolynomial(element=x, F=F, N=data.norm)

    # -- idempotents -----------------------------------------------------------

    def spec_connected(self) -> Connectivity:
        """
        Search all 0/1 ghost vectors for integral pullbacks.

        Burn(G) has connected spectrum exactly when 0 and 1 are its only idempotents.

        :return: Connectivity with the first nontrivial idempotent as witness.
        """
        h = self.h
        self.budgets.check("max_burnside_classes", h)
        inv = Matrix(self.marks).inv()
        L = int(ilcm(1, *[int(v.q) for v in inv]))
        A = [[int(v * L) for v in inv.row(i)] for i in range(h)]
        bound = max(abs(a) for row in A for a in row) * h
        dtype = np.int64 if bound < 2**62 else object
        A = np.array(A, dtype=dtype)
        weights = 2 ** np.arange(h, dtype=np.int64)
        found: List[int] = []
        chunk = 1 << 14
        for start in range(0, 1 << h, chunk):
            idx = np.arange(start, min(start + chunk, 1 << h), dtype=np.int64)
            V = ((idx[:, None] & weights) > 0).astype(dtype)
            ok = np.all((V @ A.T) % L == 0, axis=1)
            found.extend(int(k) for k in idx[ok])
        full = (1 << h) - 1
        nontrivial = [k for k in found if k not in (0, full)]
        witness = None
        if nontrivial:
            ghost = [(nontrivial[0] >> i) & 1 for i in range(h)]
            witness = self.pullback(ghost)
            if witness is None or witness * witness != witness:
                raise InvariantError("idempotent pullback check failed")
        logging.info(f"{self.group.name or 'group'}: {len(found)} idempotents in Burn(G)")
        return Connectivity(
            connected=not nontrivial, idempotent_count=len(found), idempotent=witness
        )


@lru_cache(maxsize=64)
def burnside_ring(group: FiniteGroup, budgets: Budgets = DEFAULT_BUDGETS) -> BurnsideRing:
    """Cached Burn(G)."""
    return BurnsideRing(group, budgets)
