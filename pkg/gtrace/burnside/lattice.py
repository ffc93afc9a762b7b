"""
Integer lattices on top of sympy's Hermite and Smith normal forms: kernels, ranks,
invariant factors and equality of column spans. Matrices go in and come out as numpy
object arrays of Python ints.
"""

from typing import List

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form
from sympy.matrices.normalforms import invariant_factors as _invariant_factors


def as_int_matrix(A) -> np.ndarray:
    """Object array of Python ints, always 2-d."""
    M = np.array(A, dtype=object)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    return np.vectorize(int, otypes=[object])(M) if M.size else M.astype(object)


def _to_sympy(A: np.ndarray) -> Matrix:
    return Matrix(A.shape[0], A.shape[1], [int(v) for v in A.flat])


def _from_sympy(M: Matrix) -> np.ndarray:
    return np.array([int(v) for v in M], dtype=object).reshape(M.rows, M.cols)


def smith_diagonal(A) -> List[int]:
    """Diagonal of the Smith normal form, zeros included."""
    A = as_int_matrix(A)
    if A.size == 0:
        return []
    S = smith_normal_form(_to_sympy(A))
    return [abs(int(S[i, i])) for i in range(min(S.shape))]


def invariant_factors(A) -> List[int]:
    """
    Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.

    :param A: Integer matrix.
    :return: Positive integers in divisibility order.
    """
    A = as_int_matrix(A)
    if A.size == 0:
        return []
    return sorted(abs(int(d)) for d in _invariant_factors(_to_sympy(A)) if d)


def lattice_rank(A) -> int:
    """Rank of an integer matrix, the number of nonzero Smith entries."""
    return sum(1 for d in smith_diagonal(A) if d)


def hermite_basis(K) -> np.ndarray:
    """
    Hermite normal form of the lattice spanned by the columns of K.

    Zero columns are dropped, so two matrices span the same lattice exactly when
    their Hermite bases are equal.
    """
    K = as_int_matrix(K)
    if K.size == 0 or not np.any(K != 0):
        return np.zeros((K.shape[0], 0), dtype=object)
    return _from_sympy(hermite_normal_form(_to_sympy(K)))


def integer_kernel(A) -> np.ndarray:
    """
    Columns spanning the lattice {v in Z^cols : A v = 0}.

    The Hermite basis of the columns of [I; A] is triangular with pivots taken
    bottom-up, so its columns with zero A part are a basis of the kernel.

    :param A: Integer matrix (rows x cols).
    :return: Object matrix (cols x k).
    """
    A = as_int_matrix(A)
    cols = A.shape[1]
    identity = np.eye(cols, dtype=int).astype(object)
    if A.shape[0] == 0 or not np.any(A != 0):
        return identity
    H = hermite_basis(np.vstack([identity, A]))
    keep = [j for j in range(H.shape[1]) if not np.any(H[cols:, j] != 0)]
    return H[:cols, keep]


def same_lattice(K1, K2) -> bool:
    """True when the column spans of K1 and K2 coincide."""
    H1, H2 = hermite_basis(K1), hermite_basis(K2)
    return H1.shape == H2.shape and bool(np.all(H1 == H2))
