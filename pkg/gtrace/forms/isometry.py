"""
Deciding G-isometry of equivariant spaces.

An isometry X -> Y is an invertible intertwiner phi of the modules with
``phi^T B_Y phi = B_X``. Two backends decide it: ``exhaustive`` enumerates
Hom_G(M_X, M_Y); ``structural`` transports Y onto the module of X and compares
hermitian classes in the endomorphism algebra of X.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.forms.space import (
    CHUNK,
    EquivariantSpace,
    _check_compatible,
    combine_matrices,
    intertwiners,
    module_isomorphism,
    transpose,
)
from gtrace.hermitian.algebra import endomorphism_algebra
from gtrace.hermitian.structural import same_class

EXHAUSTIVE = "exhaustive"
STRUCTURAL = "structural"
BOTH = "both"
AUTO = "auto"
BACKENDS = (EXHAUSTIVE, STRUCTURAL, BOTH, AUTO)


@dataclass
class IsometryVerdict:
    """Result of an isometry decision."""

    isometric: bool
    backend: str
    witness: Optional[np.ndarray] = None
    rung: Optional[str] = None

    def to_dict(self):
        """Plain-data view."""
        return {
            "isometric": self.isometric,
            "backend": self.backend,
            "rung": self.rung,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def is_isometry(X: EquivariantSpace, Y: EquivariantSpace, phi) -> bool:
    """Check that phi is an invertible G-map M_X -> M_Y with phi^T B_Y phi = B_X."""
    F = X.field
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (Y.dim, X.dim) or X.dim != Y.dim:
        return False
    if X.dim == 0:
        return True
    if not np.array_equal(F.matmul(F.matmul(phi.T, Y.gram), phi), X.gram):
        return False
    return bool(np.all(F.matmul(Y.rep, phi) == F.matmul(phi, X.rep)))


def _check_pair(X: EquivariantSpace, Y: EquivariantSpace) -> None:
    _check_compatible(X.module, Y.module)
    if X.epsilon != Y.epsilon:
        raise SpecError("isometry between spaces with different epsilon")


def hom_size(X: EquivariantSpace, Y: EquivariantSpace) -> int:
    """Number of elements of Hom_G(M_X, M_Y)."""
    return X.field.q ** intertwiners(X.module, Y.module).shape[0]


def isometry_exhaustive(
    X: EquivariantSpace, Y: EquivariantSpace, budgets: Budgets = DEFAULT_BUDGETS
) -> IsometryVerdict:
    """
    First isometry in the enumeration order of Hom_G(M_X, M_Y).

    :raises BudgetExceededError: When Hom_G(M_X, M_Y) exceeds the enumeration budget.
    """
    _check_pair(X, Y)
    F = X.field
    if X.dim != Y.dim:
        return IsometryVerdict(False, EXHAUSTIVE, rung=EXHAUSTIVE)
    if X.dim == 0:
        return IsometryVerdict(True, EXHAUSTIVE, np.zeros((0, 0), dtype=np.int64), EXHAUSTIVE)
    H = intertwiners(X.module, Y.module)
    k = H.shape[0]
    total = F.q**k
    budgets.check("enumeration", total)
    for start in range(0, total, CHUNK):
        coeffs = linalg.enumerate_coefficients(F.q, k, start, min(total, start + CHUNK))
        cand = combine_matrices(F, coeffs, H)
        pulled = F.matmul(F.matmul(transpose(cand), Y.gram), cand)
        hits = np.all(pulled == X.gram, axis=(1, 2))
        if hits.any():
            return IsometryVerdict(True, EXHAUSTIVE, cand[int(np.argmax(hits))], EXHAUSTIVE)
    return IsometryVerdict(False, EXHAUSTIVE, rung=EXHAUSTIVE)


def isometry_structural(
    X: EquivariantSpace, Y: EquivariantSpace, budgets: Budgets = DEFAULT_BUDGETS
) -> IsometryVerdict:
    """
    Decide X = Y through the class of B_X^-1 psi^T B_Y psi in H^1(End(X), tau).

    psi is a module isomorphism M_X -> M_Y; the witness is psi e where
    tau(e) u e = 1.
    """
    _check_pair(X, Y)
    F = X.field
    if X.dim != Y.dim:
        return IsometryVerdict(False, STRUCTURAL, rung="module")
    if X.dim == 0:
        return IsometryVerdict(True, STRUCTURAL, np.zeros((0, 0), dtype=np.int64), "module")
    psi = module_isomorphism(X.module, Y.module, budgets)
    if psi is None:
        return IsometryVerdict(False, STRUCTURAL, rung="module")
    pulled = F.matmul(F.matmul(psi.T, Y.gram), psi)
    E = endomorphism_algebra(X)
    u = E.model.from_matrix(F.matmul(linalg.inverse(F, X.gram), pulled))
    decision = same_class(E, 1, u, E.unit, budgets)
    witness = None
    if decision.same and decision.witness is not None:
        witness = F.matmul(psi, E.model.to_matrix(decision.witness))
    return IsometryVerdict(decision.same, STRUCTURAL, witness, decision.rung)


def is_isometric(
    X: EquivariantSpace,
    Y: EquivariantSpace,
    backend: str = AUTO,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> IsometryVerdict:
    """
    Decide whether X and Y are G-isometric.

    :param X: First space.
    :param Y: Second space, same field, group and epsilon.
    :param backend: ``exhaustive``, ``structural``, ``both`` (run both and compare) or
        ``auto`` (``both`` when Hom fits the enumeration budget, else ``structural``).
    :param budgets: Size limits.
    :return: Verdict; any witness returned has been verified.
    :raises InvariantError: When the backends disagree or a witness fails verification.
    """
    if backend not in BACKENDS:
        raise SpecError(f"unknown isometry backend {backend!r}, expected one of {BACKENDS}")
    _check_pair(X, Y)
    if backend == AUTO:
        fits = X.dim == Y.dim and hom_size(X, Y) <= budgets.enumeration
        backend = BOTH if fits else STRUCTURAL
    if backend == EXHAUSTIVE:
        verdict = isometry_exhaustive(X, Y, budgets)
    elif backend == STRUCTURAL:
        verdict = isometry_structural(X, Y, budgets)
    else:
        exact = isometry_exhaustive(X, Y, budgets)
        structural = isometry_structural(X, Y, budgets)
        if exact.isometric != structural.isometric:
            logging.error(f"Isometry backends disagree on {X.group.name}: {exact} vs {structural}")
            raise InvariantError(
                f"exhaustive says {exact.isometric}, structural says {structural.isometric}"
            )
        if structural.witness is not None and not is_isometry(X, Y, structural.witness):
            raise InvariantError("structural witness is not an isometry")
        verdict = IsometryVerdict(exact.isometric, BOTH, exact.witness, structural.rung)
    if verdict.witness is not None and not is_isometry(X, Y, verdict.witness):
        raise InvariantError(f"{verdict.backend} witness is not an isometry")
    return verdict


def invert_witness(F, phi) -> np.ndarray:
    """Isometry Y -> X from phi: X -> Y."""
    return linalg.inverse(F, phi)
