"""Linear algebra over a finite field, on integer-encoded numpy arrays."""

from typing import List, Optional, Tuple

import numpy as np

from gtrace.errors import InvariantError
from gtrace.fields.finite_field import FieldDesc


def rref(F: FieldDesc, A) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form.

    :param F: Field.
    :param A: Matrix (rows x cols).
    :return: (R, pivot columns).
    """
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise InvariantError(f"rref expects a matrix, got shape {R.shape}")
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = F.mul(R[r], F.inv(int(R[r, c])))
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if len(others):
            R[others] = F.sub(R[others], F.mul(R[others, c][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FieldDesc, A) -> int:
    """Rank of a matrix."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: FieldDesc, A) -> np.ndarray:
    """
    Basis of the right kernel {x : A x = 0}.

    :param F: Field.
    :param A: Matrix (rows x cols).
    :return: Array (k x cols), one basis vector per row, in free-column order.
    """
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[row, f]))
    return basis


def row_space(F: FieldDesc, vectors) -> np.ndarray:
    """Echelon basis of the span of the given row vectors."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        return np.zeros((0, V.shape[-1] if V.ndim == 2 else 0), dtype=np.int64)
    R, pivots = rref(F, V)
    return R[: len(pivots)]


def inverse(F: FieldDesc, A) -> np.ndarray:
    """Inverse of a square matrix; raises InvariantError when singular."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, pivots = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if pivots[:n] != list(range(n)):
        raise InvariantError("matrix is singular")
    return R[:, n:]


def det(F: FieldDesc, A) -> int:
    """Determinant by Gaussian elimination."""
    M = np.array(A, dtype=np.int64, copy=True)
    n = M.shape[0]
    result = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if len(nz) == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            M[[c, k]] = M[[k, c]]
            result = F.neg(result)
        pivot = int(M[c, c])
        result = F.mul(result, pivot)
        if c + 1 < n:
            factors = F.mul(M[c + 1 :, c], F.inv(pivot))
            M[c + 1 :] = F.sub(M[c + 1 :], F.mul(np.asarray(factors)[:, None], M[c][None, :]))
    return int(result)


def solve(F: FieldDesc, A, b) -> Optional[np.ndarray]:
    """
    One solution x of A x = b, or None.

    :param F: Field.
    :param A: Matrix (rows x cols).
    :param b: Vector (rows,).
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, pivots = rref(F, np.hstack([A, b]))
    cols = A.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, cols]
    return x


def batch_nonsingular(F: FieldDesc, mats) -> np.ndarray:
    """
    Nonsingularity of a stack of square matrices by vectorised elimination.

    :param F: Field.
    :param mats: Array (N, d, d).
    :return: Bool array (N,).
    """
    M = np.array(mats, dtype=np.int64, copy=True)
    N, d = M.shape[0], M.shape[1]
    ok = np.ones(N, dtype=bool)
    if N == 0:
        return ok
    idx = np.arange(N)
    for c in range(d):
        nonzero = M[:, c:, c] != 0
        has = nonzero.any(axis=1)
        ok &= has
        piv = c + nonzero.argmax(axis=1)
        row_c = M[idx, c].copy()
        M[idx, c] = M[idx, piv]
        M[idx, piv] = row_c
        pivot = np.where(M[:, c, c] == 0, 1, M[:, c, c])
        if c + 1 < d:
            factors = np.asarray(F.mul(M[:, c + 1 :, c], np.asarray(F.inv(pivot))[:, None]))
            update = np.asarray(F.mul(factors[:, :, None], M[:, c, None, :]))
            M[:, c + 1 :, :] = F.sub(M[:, c + 1 :, :], update)
    return ok


class SubspaceCoordinates:
    """Coordinates of vectors with respect to a fixed basis of a subspace of F^n."""

    def __init__(self, F: FieldDesc, basis):
        """
        Precompute a pivot system for the basis.

        :param F: Field.
        :param basis: Array (k x n) of linearly independent rows.
        """
        self.F = F
        self.basis = np.asarray(basis, dtype=np.int64)
        k = self.basis.shape[0]
        if k == 0:
            self.pivots: List[int] = []
            self._solver = np.zeros((0, 0), dtype=np.int64)
            return
        _, pivots = rref(F, self.basis)
        if len(pivots) != k:
            raise InvariantError("basis vectors are linearly dependent")
        self.pivots = pivots
        self._solver = inverse(F, self.basis[:, pivots])

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return self.basis.shape[0]

    def coordinates(self, vectors, check: bool = True) -> np.ndarray:
        """
        Coordinates of row vectors; raises when a vector is outside the span.

        :param vectors: Array (..., n).
        :param check: Verify that the vectors lie in the span.
        :return: Array (..., k).
        """
        V = np.asarray(vectors, dtype=np.int64)
        if self.dim == 0:
            if check and np.any(V != 0):
                raise InvariantError("vector outside the subspace")
            return np.zeros(V.shape[:-1] + (0,), dtype=np.int64)
        c = self.F.matmul(V[..., self.pivots][..., None, :], self._solver)[..., 0, :]
        if check and not np.array_equal(self.combine(c), V % self.F.q):
            raise InvariantError("vector outside the subspace")
        return c

    def contains(self, vectors) -> bool:
        """True when every row vector lies in the span."""
        V = np.asarray(vectors, dtype=np.int64)
        if self.dim == 0:
            return not np.any(V != 0)
        c = self.F.matmul(V[..., self.pivots][..., None, :], self._solver)[..., 0, :]
        return bool(np.array_equal(self.combine(c), V))

    def combine(self, coords) -> np.ndarray:
        """Linear combination of the basis with the given coordinates."""
        c = np.asarray(coords, dtype=np.int64)
        if self.dim == 0:
            return np.zeros(c.shape[:-1] + (self.basis.shape[1],), dtype=np.int64)
        return self.F.matmul(c[..., None, :], self.basis)[..., 0, :]


def enumerate_coefficients(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """
    Coefficient vectors with indices start..stop-1 in F_q^k, first coordinate least significant.

    :param q: Field size.
    :param k: Vector length.
    :param start: First index.
    :param stop: One past the last index.
    :return: Array (stop - start, k) of encodings.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    weights = q ** np.arange(k, dtype=np.int64)
    return (idx[:, None] // weights) % q
