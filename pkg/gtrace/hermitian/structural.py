"""
Structural classification of hermitian classes and the certified class-equality ladder.

Classes of E are classes of E/J (radical reduction), which split as a product over
the sigma-stable components of E/J. Per component: an exchanged pair or a unitary
factor has one class; a factor whose hermitian elements are symmetric forms has two,
told apart by the square class of det(L_u) on a minimal left ideal; one whose
hermitian elements are alternating forms has one, or none in odd degree.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, InvariantError
from gtrace.fields import linalg
from gtrace.hermitian.algebra import AlgebraWithInvolution, HermitianElement
from gtrace.hermitian.classes import CHUNK, HermitianClassSet
from gtrace.hermitian.radical import RadicalReduction, reduce_mod_radical
from gtrace.hermitian.wedderburn import Component, split_semisimple

STRUCTURAL = "structural"
TRANSPORTER = "transporter"
EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True, eq=False)
class StructuralData:
    """Radical reduction of E together with the components of E/J."""

    reduction: RadicalReduction
    components: List[Component]


@lru_cache(maxsize=64)
def structural_data(E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS) -> StructuralData:
    """Reduce modulo the radical and split the quotient (cached per algebra)."""
    reduction = reduce_mod_radical(E, budgets)
    components = split_semisimple(reduction.quotient, budgets, check=False)
    return StructuralData(reduction, components)


@lru_cache(maxsize=64)
def _reduction(E: AlgebraWithInvolution, budgets: Budgets) -> RadicalReduction:
    return reduce_mod_radical(E, budgets)


def _restricted_det(A: AlgebraWithInvolution, u, subspace) -> int:
    coords = linalg.SubspaceCoordinates(A.field, subspace)
    images = A.mul(u, subspace)
    return linalg.det(A.field, coords.coordinates(images))


def component_label(comp: Component, u, epsilon: int) -> int:
    """
    Class label of a component element: 0, or 1 for the non-square determinant class.

    :param comp: Component of E/J.
    :param u: Invertible eps-hermitian element in component coordinates.
    :param epsilon: +1 or -1.
    """
    if comp.class_count(epsilon) != 2:
        return 0
    A = comp.algebra
    F = A.field
    ideal = linalg.row_space(F, A.mul(np.eye(A.dim, dtype=np.int64), comp.primitive))
    det = _restricted_det(A, u, ideal)
    if det == 0:
        raise InvariantError("component element is not invertible")
    label = 0 if F.is_square(det) else 1
    if comp.degree % 2:
        full = linalg.det(F, A.left_matrix(u))
        if (0 if F.is_square(full) else 1) != label:
            raise InvariantError("determinant class disagrees with the reduced-norm power")
    return label


def classify_element(
    E: AlgebraWithInvolution, epsilon: int, z, budgets: Budgets = DEFAULT_BUDGETS
) -> Tuple[int, ...]:
    """Structural label of an invertible eps-hermitian element of E."""
    data = structural_data(E, budgets)
    zbar = data.reduction.project(z)
    return tuple(component_label(c, c.project(zbar), epsilon) for c in data.components)


def _component_representatives(comp: Component, epsilon: int, budgets: Budgets) -> List[np.ndarray]:
    count = comp.class_count(epsilon)
    if count == 0:
        return []
    A = comp.algebra
    H = A.hermitian_basis(epsilon)
    total = A.p ** len(H)
    reps: List[Optional[np.ndarray]] = [None] * count
    scanned = 0
    for start in range(1, total, CHUNK):
        Z = A.span_elements(H, start, min(total, start + CHUNK))
        for u in Z[A.units_mask(Z)]:
            label = component_label(comp, u, epsilon)
            if reps[label] is None:
                reps[label] = u
            if all(r is not None for r in reps):
                return reps
        scanned += len(Z)
        if scanned > budgets.enumeration:
            raise BudgetExceededError("enumeration", scanned, budgets.enumeration)
    raise InvariantError(f"component has fewer hermitian classes than {count}")


def classify_classes_structural(
    E: AlgebraWithInvolution, epsilon: int, budgets: Budgets = DEFAULT_BUDGETS
) -> HermitianClassSet:
    """
    H^eps(E) as a product of per-component class sets.

    :param E: Algebra with involution.
    :param epsilon: +1 or -1.
    :param budgets: Size limits for the radical and splitting scans.
    :return: Class set with one label tuple and one lifted representative per class.
    """
    data = structural_data(E, budgets)
    Ebar = data.reduction.quotient
    per_component = [_component_representatives(c, epsilon, budgets) for c in data.components]
    classes, labels = [], []
    for combo in itertools.product(*[list(enumerate(r)) for r in per_component]):
        zbar = np.zeros(Ebar.dim, dtype=np.int64)
        for comp, (_, u) in zip(data.components, combo):
            zbar = Ebar.add(zbar, comp.embed(u))
        if E.dim == 0:
            z = E.unit.copy()
        else:
            z = data.reduction.lift_hermitian(zbar, epsilon)
        classes.append(z)
        labels.append(tuple(label for label, _ in combo))
    kinds = ", ".join(c.involution for c in data.components)
    logging.info(f"{E.name}, eps={epsilon:+d}: {len(classes)} structural classes ({kinds})")
    return HermitianClassSet(E, epsilon, classes, STRUCTURAL, labels=labels)


def transporter(
    A: AlgebraWithInvolution, z1, z2, budgets: Budgets = DEFAULT_BUDGETS
) -> Optional[np.ndarray]:
    """
    Least e (in enumeration order) with sigma(e) z1 e = z2, or None.

    :raises BudgetExceededError: When A has more elements than the enumeration budget.
    """
    z2 = np.asarray(z2, dtype=np.int64) % A.p
    for X in A.iter_elements(budgets):
        hits = np.all(A.act(X, z1) == z2, axis=-1)
        if hits.any():
            return X[int(np.argmax(hits))]
    return None


@dataclass
class ClassDecision:
    """Verdict of same_class with the ladder rung that decided it."""

    same: bool
    rung: str
    witness: Optional[np.ndarray] = None

    def to_dict(self):
        """Plain-data view."""
        return {
            "same": self.same,
            "rung": self.rung,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def _lift_witness(reduction: RadicalReduction, ebar, z1, z2, epsilon: int) -> np.ndarray:
    E = reduction.algebra
    e0 = reduction.lift(ebar)
    e1 = reduction.radical_chain(E.act(e0, z1), z2, epsilon)
    if e1 is None:
        raise InvariantError("transported element differs modulo the radical")
    return E.mul(e0, e1)


def same_class(
    E: AlgebraWithInvolution, epsilon: int, z1, z2, budgets: Budgets = DEFAULT_BUDGETS
) -> ClassDecision:
    """
    Decide [z1] = [z2] in H^eps(E), with a witness e (sigma(e) z1 e = z2) when one is found.

    Rungs, first applicable wins: structural invariants (witness by transporter search in
    E/J lifted through the radical chain when E/J is enumerable), transporter search in
    E/J, exhaustive search in E.

    :raises BudgetExceededError: When no rung fits the budgets.
    """
    h1 = HermitianElement(E, epsilon, z1)
    h2 = HermitianElement(E, epsilon, z2)
    z1, z2 = h1.z, h2.z
    if np.array_equal(z1, z2):
        return ClassDecision(True, STRUCTURAL, E.unit.copy())
    try:
        data = structural_data(E, budgets)
        l1 = classify_element(E, epsilon, z1, budgets)
        l2 = classify_element(E, epsilon, z2, budgets)
        if l1 != l2:
            return ClassDecision(False, STRUCTURAL)
        red = data.reduction
        Ebar = red.quotient
        if Ebar.size > budgets.enumeration:
            return ClassDecision(True, STRUCTURAL)
        ebar = transporter(Ebar, red.project(z1), red.project(z2), budgets)
        if ebar is None:
            raise InvariantError("equal structural labels but no transporter in E/J")
        return ClassDecision(True, STRUCTURAL, _lift_witness(red, ebar, z1, z2, epsilon))
    except BudgetExceededError as err:
        logging.info(f"Structural rung skipped for {E.name}: {err}")
    try:
        red = _reduction(E, budgets)
        ebar = transporter(red.quotient, red.project(z1), red.project(z2), budgets)
        if ebar is None:
            return ClassDecision(False, TRANSPORTER)
        return ClassDecision(True, TRANSPORTER, _lift_witness(red, ebar, z1, z2, epsilon))
    except BudgetExceededError as err:
        logging.info(f"Transporter rung skipped for {E.name}: {err}")
    e = transporter(E, z1, z2, budgets)
    return ClassDecision(e is not None, EXHAUSTIVE, e)
