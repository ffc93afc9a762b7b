"""Hermitian classes H^eps(E, sigma): exhaustive orbits and the diagonal map into matrices."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import SpecError
from gtrace.hermitian.algebra import AlgebraWithInvolution, HermitianElement, matrix_algebra

CHUNK = 2**12


@dataclass
class HermitianClassSet:
    """
    Representatives of the classes of invertible eps-hermitian elements under z -> sigma(e) z e.

    Exhaustive sets also carry ``orbit_index`` (element index -> class id) and orbit sizes;
    structural sets carry one invariant label per class instead.
    """

    algebra: AlgebraWithInvolution
    epsilon: int
    classes: List[np.ndarray]
    method: str
    orbit_sizes: List[int] = field(default_factory=list)
    orbit_index: Dict[int, int] = field(default_factory=dict, repr=False)
    labels: List[Tuple[int, ...]] = field(default_factory=list)

    def __len__(self) -> int:
        """Number of classes."""
        return len(self.classes)

    def class_of(self, z) -> Optional[int]:
        """Class id of an element of an exhaustive set (None if z is not in E^eps)."""
        return self.orbit_index.get(self.algebra.index_of(z))

    def to_dict(self) -> Dict:
        """Plain-data view: representative coordinates, orbit sizes or labels."""
        out = {
            "algebra": self.algebra.name,
            "epsilon": self.epsilon,
            "method": self.method,
            "count": len(self.classes),
            "representatives": [c.tolist() for c in self.classes],
        }
        if self.orbit_sizes:
            out["orbit_sizes"] = list(self.orbit_sizes)
        if self.labels:
            out["labels"] = [list(label) for label in self.labels]
        return out


def hermitian_units(
    E: AlgebraWithInvolution, epsilon: int, budgets: Budgets = DEFAULT_BUDGETS
) -> np.ndarray:
    """All invertible eps-hermitian elements, in enumeration order."""
    H = E.hermitian_basis(epsilon)
    total = E.p ** len(H)
    budgets.check("enumeration", total)
    found = []
    for start in range(0, total, CHUNK):
        Z = E.span_elements(H, start, min(total, start + CHUNK))
        found.append(Z[E.units_mask(Z)])
    out = np.vstack(found) if found else np.zeros((0, E.dim), dtype=np.int64)
    order = np.argsort([E.index_of(z) for z in out], kind="stable")
    return out[order]


def all_units(E: AlgebraWithInvolution, budgets: Budgets = DEFAULT_BUDGETS) -> np.ndarray:
    """E^x, in enumeration order."""
    return np.vstack([X[E.units_mask(X)] for X in E.iter_elements(budgets)])


def class_set_exhaustive(
    E: AlgebraWithInvolution, epsilon: int, budgets: Budgets = DEFAULT_BUDGETS
) -> HermitianClassSet:
    """
    Orbits of E^eps under E^x by direct enumeration.

    :param E: Algebra with involution, p^dim within the enumeration budget.
    :param epsilon: +1 or -1.
    :param budgets: Size limits.
    :return: Class set whose representatives are the least elements of their orbits.
    """
    budgets.check("enumeration", E.size)
    units = all_units(E, budgets)
    herm = hermitian_units(E, epsilon, budgets)
    orbit_index: Dict[int, int] = {}
    classes, sizes = [], []
    for z in herm:
        if E.index_of(z) in orbit_index:
            continue
        cid = len(classes)
        orbit = set()
        for start in range(0, len(units), CHUNK):
            images = E.act(units[start : start + CHUNK], z)
            orbit.update(E.index_of(w) for w in images)
        for idx in orbit:
            orbit_index[idx] = cid
        classes.append(z)
        sizes.append(len(orbit))
    logging.info(f"{E.name}, eps={epsilon:+d}: {len(classes)} classes over {len(herm)} elements")
    return HermitianClassSet(E, epsilon, classes, "exhaustive", sizes, orbit_index)


def diagonal_embed(u: HermitianElement, n: int) -> HermitianElement:
    """
    The block-diagonal element u_n = diag(u, ..., u) of (E_n, sigma_n).

    :param u: Hermitian element of E.
    :param n: Matrix size.
    """
    if n < 1:
        raise SpecError("matrix size must be positive")
    E = u.algebra
    En = matrix_algebra(E, n)
    z = np.zeros((n, n, E.dim), dtype=np.int64)
    for i in range(n):
        z[i, i] = u.z
    return HermitianElement(En, u.epsilon, z.reshape(-1))
