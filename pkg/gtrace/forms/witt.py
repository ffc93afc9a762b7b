"""Diagonalization and Witt-class invariants of plain symmetric forms over F_q."""

from typing import List, Tuple

import numpy as np

from gtrace.errors import InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc
from gtrace.forms.space import EquivariantSpace, transpose


def _congruence(F: FieldDesc, B: np.ndarray, P: np.ndarray) -> np.ndarray:
    return F.matmul(F.matmul(transpose(P), B), P)


def diagonalize_symmetric(F: FieldDesc, gram) -> Tuple[np.ndarray, List[int]]:
    """
    Symmetric Gaussian elimination.

    :param F: Field of odd characteristic.
    :param gram: Symmetric matrix, possibly singular.
    :return: (P, diagonal) with ``P^T B P = diag(diagonal)`` and P invertible.
    """
    B = np.asarray(gram, dtype=np.int64) % F.q
    if not np.array_equal(B, B.T):
        raise SpecError("diagonalization needs a symmetric matrix")
    d = B.shape[0]
    P = np.eye(d, dtype=np.int64)
    M = B.copy()
    for t in range(d):
        diag = np.nonzero(np.diagonal(M)[t:])[0]
        if len(diag) == 0:
            rest = np.argwhere(M[t:, t:] != 0)
            if len(rest) == 0:
                break
            k, l = (int(v) + t for v in rest[0])
            # e_k + e_l has square 2 M[k, l] != 0
            E = np.eye(d, dtype=np.int64)
            E[l, k] = 1
            P = F.matmul(P, E)
            M = _congruence(F, M, E)
            k_piv = k
        else:
            k_piv = t + int(diag[0])
        if k_piv != t:
            E = np.eye(d, dtype=np.int64)
            E[[t, k_piv]] = E[[k_piv, t]]
            P = F.matmul(P, E)
            M = _congruence(F, M, E)
        inv = F.inv(int(M[t, t]))
        E = np.eye(d, dtype=np.int64)
        E[t, t + 1 :] = F.neg(F.mul(inv, M[t, t + 1 :]))
        P = F.matmul(P, E)
        M = _congruence(F, M, E)
    if np.count_nonzero(M - np.diag(np.diagonal(M))):
        raise InvariantError("symmetric elimination left off-diagonal entries")
    return P, [int(x) for x in np.diagonal(M)]


def witt_class_plain(V: EquivariantSpace) -> Tuple[int, int]:
    """
    Witt invariants of a nonsingular symmetric form with no group action.

    Two such forms over F_q are Witt-equivalent exactly when the returned pairs agree.

    :param V: Space over the trivial group with epsilon = +1.
    :return: (rank mod 2, square class of the signed discriminant (-1)^(d(d-1)/2) det).
    """
    if V.group.order != 1:
        raise SpecError("witt_class_plain expects a form without group action")
    if V.epsilon != 1:
        raise SpecError("witt_class_plain expects a symmetric form")
    F = V.field
    _, diag = diagonalize_symmetric(F, V.gram)
    if any(x == 0 for x in diag):
        raise SpecError("witt_class_plain expects a nonsingular form")
    d = V.dim
    disc = 1
    for x in diag:
        disc = F.mul(disc, x)
    if (d * (d - 1) // 2) % 2:
        disc = F.neg(disc)
    return d % 2, F.square_class(disc)


def plain_form_class(F: FieldDesc, gram) -> Tuple[int, int]:
    """Isometry invariants (rank, discriminant class) of a nonsingular symmetric matrix."""
    B = np.asarray(gram, dtype=np.int64) % F.q
    det = linalg.det(F, B)
    if det == 0:
        raise SpecError("plain_form_class expects a nonsingular form")
    return B.shape[0], F.square_class(det)
