"""
Jacobson radical and reduction of hermitian classes modulo the radical.

The radical is J = {x : 1 - y x is invertible for all y in E}. When E is small enough to scan,
J is grown from zero: every nilpotent element outside the current part is tested
against the criterion, and an element that passes is saturated to the two-sided ideal
it generates together with the part found so far. Larger algebras fall back to the
trace ideal ``{x : Tr(L_yx) = 0 for all y}``, a two-sided ideal containing every
nilpotent ideal, whose nilpotent elements are scanned the same way.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, InvariantError
from gtrace.fields import linalg
from gtrace.forms.space import eps_encoding
from gtrace.hermitian.algebra import AlgebraWithInvolution

CHUNK = 2**12
# the 1 - yx scans of E run within enumeration / SCAN_FACTOR elements
SCAN_FACTOR = 64
def ideal_product(E: AlgebraWithInvolution, A, B) -> np.ndarray:
    """Echelon basis of span{a b : a in A, b in B}."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if len(A) == 0 or len(B) == 0:
        return np.zeros((0, E.dim), dtype=np.int64)
    prods = E.mul(A[:, None, :], B[None, :, :]).reshape(-1, E.dim)
    return linalg.row_space(E.field, prods)


def generated_ideal(E: AlgebraWithInvolution, vectors) -> np.ndarray:
    """Two-sided ideal generated by the given elements (E is unital)."""
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, E.dim)
    basis = np.eye(E.dim, dtype=np.int64)
    left = ideal_product(E, basis, V)
    return ideal_product(E, left, basis) if len(left) else left


def is_nilpotent_ideal(E: AlgebraWithInvolution, ideal) -> bool:
    """I^k = 0 for some k, by iterating I^(k+1) = I^k I."""
    I = linalg.row_space(E.field, ideal) if len(ideal) else np.zeros((0, E.dim), dtype=np.int64)
    power = I
    while len(power):
        nxt = ideal_product(E, power, I)
        if len(nxt) == len(power):
            return False
        power = nxt
    return True


def nilpotent_mask(E: AlgebraWithInvolution, X) -> np.ndarray:
    """x^n = 0 for a stack of elements (n = dim E)."""
    X = np.asarray(X, dtype=np.int64)
    k = 1
    while k < max(E.dim, 1):
        X = E.mul(X, X)
        k *= 2
    return ~np.any(X, axis=-1)


def trace_ideal(E: AlgebraWithInvolution) -> np.ndarray:
    """Basis of {x : Tr(L_{y x}) = 0 for all y}."""
    if E.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    tr = np.einsum("kjj->k", E.structure) % E.p
    gram = E.structure @ tr % E.p
    return linalg.nullspace(E.field, gram)


def scaled_basis(E: AlgebraWithInvolution) -> np.ndarray:
    """c b for c in F_p^x and b the unit or a basis vector."""
    basis = np.vstack([E.unit[None, :], np.eye(E.dim, dtype=np.int64)])
    scalars = np.arange(1, E.p, dtype=np.int64)
    return (scalars[:, None, None] * basis[None, :, :]).reshape(-1, E.dim) % E.p


def quasi_regular(E: AlgebraWithInvolution, x, Y) -> bool:
    """1 - y x is a unit for every y in the stack Y."""
    return bool(E.units_mask(E.sub(E.unit, E.mul(Y, x))).all())


def _grow(E: AlgebraWithInvolution, J: np.ndarray, x) -> np.ndarray:
    return generated_ideal(E, np.vstack([J, np.asarray(x, dtype=np.int64)[None, :]]))


def invertibility_radical(
    E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS
) -> np.ndarray:
    """
    J = {x : 1 - y x invertible for all y}, by a scan of E.

    Elements of J are nilpotent, so only nilpotent x outside the current part are
    tested, first against the scalar multiples of the basis and then against every
    y in E. Each accepted x is saturated to the ideal it generates with the part.

    :param E: Algebra with involution.
    :param budgets: E is scanned once per tested element, so SCAN_FACTOR |E| is
        bounded by the enumeration budget.
    :return: Echelon basis of J (rows).
    :raises BudgetExceededError: When E is too large to enumerate.
    """
    budgets.check("enumeration", E.size * SCAN_FACTOR)
    quick = scaled_basis(E)
    J = np.zeros((0, E.dim), dtype=np.int64)
    found = linalg.SubspaceCoordinates(E.field, J)
    tested = 0
    for X in E.iter_elements(budgets):
        for x in X[nilpotent_mask(E, X)]:
            if found.contains(x) or not quasi_regular(E, x, quick):
                continue
            tested += 1
            if all(quasi_regular(E, x, Y) for Y in E.iter_elements(budgets)):
                J = _grow(E, J, x)
                found = linalg.SubspaceCoordinates(E.field, J)
    logging.debug(f"{E.name}: {tested} elements tested against all of E for the radical")
    return J


def trace_ladder_radical(
    E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS
) -> np.ndarray:
    """
    J located inside the trace ideal T.

    T is the radical when it is nilpotent; otherwise x in T is kept exactly when the
    ideal generated by the part found so far and x is nilpotent.

    :raises BudgetExceededError: When T is not nilpotent and too large to scan.
    """
    T = trace_ideal(E)
    if is_nilpotent_ideal(E, T):
        return linalg.row_space(E.field, T) if len(T) else T
    total = E.p ** len(T)
    budgets.check("enumeration", total)
    logging.info(f"Scanning {total} elements of the trace ideal of {E.name} for the radical")
    J = np.zeros((0, E.dim), dtype=np.int64)
    found = linalg.SubspaceCoordinates(E.field, J)
    for start in range(1, total, CHUNK):
        X = E.span_elements(T, start, min(total, start + CHUNK))
        for x in X[nilpotent_mask(E, X)]:
            if found.contains(x):
                continue
            candidate = _grow(E, J, x)
            if is_nilpotent_ideal(E, candidate):
                J = candidate
                found = linalg.SubspaceCoordinates(E.field, J)
    return J


def jacobson_radical(E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS) -> np.ndarray:
    """
    The Jacobson radical J of E.

    The invertibility criterion decides J whenever SCAN_FACTOR |E| fits the
    enumeration budget, and the trace ideal ladder takes over beyond it. Either way
    J is verified to be a sigma-stable nilpotent two-sided ideal whose basis passes
    the 1 - yx test against the scalar multiples of the basis of E.

    :param E: Algebra with involution.
    :param budgets: Size limits for the scans.
    :return: Echelon basis of J (rows).
    :raises BudgetExceededError: When neither scan fits the budget.
    """
    try:
        J = invertibility_radical(E, budgets)
    except BudgetExceededError as err:
        logging.info(f"Radical of {E.name} from the trace ideal: {err}")
        J = trace_ladder_radical(E, budgets)
    _verify_radical(E, J, budgets)
    return J


def _verify_radical(E: AlgebraWithInvolution, J: np.ndarray, budgets: Budgets) -> None:
    F = E.field
    coords = linalg.SubspaceCoordinates(F, J)
    if not len(J):
        return
    if not coords.contains(E.involution(J)):
        raise InvariantError("radical is not stable under the involution")
    if not coords.contains(generated_ideal(E, J)):
        raise InvariantError("radical is not a two-sided ideal")
    if not is_nilpotent_ideal(E, J):
        raise InvariantError("radical is not nilpotent")
    quick = scaled_basis(E)
    if not all(quasi_regular(E, x, quick) for x in J):
        raise InvariantError("1 - y x is not invertible for a radical element x")
    if E.size * len(J) * SCAN_FACTOR <= budgets.enumeration:
        for Y in E.iter_elements(budgets):
            if not all(quasi_regular(E, x, Y) for x in J):
                raise InvariantError("1 - y x is not invertible for a radical element x")


@dataclass(frozen=True, eq=False)
class RadicalReduction:
    """The quotient E/J with its induced involution, and the maps between E and E/J."""

    algebra: AlgebraWithInvolution
    radical: np.ndarray

    @cached_property
    def _frame(self) -> Tuple[np.ndarray, np.ndarray]:
        E, J = self.algebra, self.radical
        pivots = linalg.rref(E.field, J)[1] if len(J) else []
        free = [c for c in range(E.dim) if c not in pivots]
        C = np.eye(E.dim, dtype=np.int64)[free]
        W = np.vstack([C, J]) if len(J) else C
        return C, linalg.inverse(E.field, W) if E.dim else W

    @property
    def complement(self) -> np.ndarray:
        """Basis of a complement of J, standard basis vectors off the pivots of J."""
        return self._frame[0]

    @property
    def quotient_dim(self) -> int:
        """dim E - dim J."""
        return self.complement.shape[0]

    def project(self, x) -> np.ndarray:
        """Image in E/J."""
        Winv = self._frame[1]
        return np.asarray(x, dtype=np.int64) @ Winv[:, : self.quotient_dim] % self.algebra.p

    def lift(self, xbar) -> np.ndarray:
        """A preimage in E."""
        return np.asarray(xbar, dtype=np.int64) @ self.complement % self.algebra.p

    @cached_property
    def quotient(self) -> AlgebraWithInvolution:
        """E/J with the induced involution."""
        E, C = self.algebra, self.complement
        k = C.shape[0]
        T = self.project(E.mul(C[:, None, :], C[None, :, :]))
        S = self.project(E.involution(C))
        u = self.project(E.unit)
        return AlgebraWithInvolution(E.field, T.reshape(k, k, k), u, S, name=f"{E.name}/J")

    def lift_hermitian(self, zbar, epsilon: int) -> np.ndarray:
        """
        Symmetrized lift w = (v + eps sigma(v)) / 2 of an eps-hermitian class of E/J.

        :param zbar: Invertible eps-hermitian element of the quotient.
        :param epsilon: +1 or -1.
        :return: Invertible eps-hermitian element of E mapping to zbar.
        """
        E = self.algebra
        eps = eps_encoding(E.field, epsilon)
        half = E.field.inv(2)
        v = self.lift(zbar)
        w = E.scale(half, E.add(v, E.scale(eps, E.involution(v))))
        if not E.is_hermitian(w, epsilon):
            raise InvariantError("symmetrized lift is not an invertible hermitian element")
        return w

    def radical_chain(self, z, z2, epsilon: int) -> Optional[np.ndarray]:
        """
        e with sigma(e) z e = z2 for hermitian z, z2 congruent modulo J.

        Each step corrects the difference r = z2 - z by b = z^-1 r / 2 and moves the
        difference into the square of the ideal it lived in.

        :return: e = (1 + b_1)(1 + b_2)..., or None when z and z2 differ modulo J.
        """
        E = self.algebra
        z = np.asarray(z, dtype=np.int64) % E.p
        z2 = np.asarray(z2, dtype=np.int64) % E.p
        if np.any(self.project(E.sub(z2, z))):
            return None
        half = E.field.inv(2)
        e = E.unit.copy()
        current = z
        steps = 0
        while not np.array_equal(current, z2):
            r = E.sub(z2, current)
            b = E.scale(half, E.mul(E.inverse(current), r))
            step = E.add(E.unit, b)
            current = E.act(step, current)
            e = E.mul(e, step)
            steps += 1
            if steps > E.dim + 1:
                raise InvariantError("radical chain did not terminate")
        if not np.array_equal(E.act(e, z), z2):
            raise InvariantError("radical chain witness does not transport z")
        return e


def reduce_mod_radical(
    E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS
) -> RadicalReduction:
    """Compute J and the quotient E/J."""
    J = jacobson_radical(E, budgets)
    logging.info(f"Radical of {E.name}: dimension {len(J)} of {E.dim}")
    return RadicalReduction(E, J)
