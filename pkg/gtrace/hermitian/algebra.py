"""
Finite-dimensional algebras with involution over a prime field F_p.

Elements are row vectors of coordinates on a fixed basis b_0..b_{n-1}. The tensor
``structure[i, j]`` holds the coordinates of ``b_i b_j`` and ``sigma[j]`` those of
``sigma(b_j)``, so ``sigma(x) = x @ sigma``. Left multiplication by x acts on row
vectors as ``x y = y @ left_matrix(x)``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc, make_field
from gtrace.forms.space import EquivariantSpace, eps_encoding, intertwiners, transpose

CHUNK = 2**12


@dataclass(frozen=True, eq=False)
class MatrixModel:
    """Realisation of an algebra inside d x d matrices over F_q (restriction of scalars to F_p)."""

    field: FieldDesc
    basis: np.ndarray

    @cached_property
    def _coordinates(self) -> linalg.SubspaceCoordinates:
        n = self.basis.shape[0]
        digits = self.field.coords(self.basis).reshape(n, -1)
        return linalg.SubspaceCoordinates(make_field(self.field.p), digits)

    def to_matrix(self, x) -> np.ndarray:
        """Matrix of the element with coordinates x."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(self.basis.shape[1:], dtype=np.int64)
        for i in np.nonzero(x)[0]:
            out = np.asarray(F.add(out, F.mul(int(x[i]), self.basis[i])), dtype=np.int64)
        return out

    def from_matrix(self, A) -> np.ndarray:
        """Coordinates of a matrix in the algebra; raises when A is outside it."""
        digits = self.field.coords(np.asarray(A, dtype=np.int64)).reshape(-1)
        return self._coordinates.coordinates(digits)


@dataclass(frozen=True, eq=False)
class AlgebraWithInvolution:
    """An associative unital F_p-algebra with an anti-automorphism of order at most 2."""

    field: FieldDesc
    structure: np.ndarray
    unit: np.ndarray
    sigma: np.ndarray
    name: str = ""
    model: Optional[MatrixModel] = field(default=None, repr=False)

    def __post_init__(self):
        """Check shapes, associativity, the unit and the involution on all basis elements."""
        F = self.field
        if not F.is_prime:
            raise SpecError("algebras with involution are carried over the prime field")
        T = np.asarray(self.structure, dtype=np.int64) % F.p
        n = T.shape[0]
        if T.shape != (n, n, n):
            raise SpecError(f"structure constants must have shape (n, n, n), got {T.shape}")
        S = np.asarray(self.sigma, dtype=np.int64) % F.p
        u = np.asarray(self.unit, dtype=np.int64) % F.p
        if S.shape != (n, n) or u.shape != (n,):
            raise SpecError("sigma must be n x n and the unit a vector of length n")
        p = F.p
        lhs = np.einsum("ijl,lkm->ijkm", T, T) % p
        rhs = np.einsum("jkl,ilm->ijkm", T, T) % p
        if not np.array_equal(lhs, rhs):
            raise InvariantError(f"algebra {self.name!r} is not associative")
        eye = np.eye(n, dtype=np.int64)
        if n and (
            not np.array_equal(np.einsum("i,ijk->jk", u, T) % p, eye)
            or not np.array_equal(np.einsum("j,ijk->ik", u, T) % p, eye)
        ):
            raise InvariantError(f"the unit of {self.name!r} is not a two-sided identity")
        if not np.array_equal(S @ S % p, eye):
            raise InvariantError("sigma is not an involution")
        anti_lhs = np.einsum("ijk,kl->ijl", T, S) % p
        anti_rhs = np.einsum("ja,ib,abl->ijl", S, S, T) % p
        if not np.array_equal(anti_lhs, anti_rhs):
            raise InvariantError("sigma is not an anti-automorphism")
        for name, arr in (("structure", T), ("sigma", S), ("unit", u)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __repr__(self) -> str:
        """Name and size."""
        return f"AlgebraWithInvolution({self.name or 'E'}, dim={self.dim}, p={self.p})"

    @property
    def p(self) -> int:
        """Characteristic."""
        return self.field.p

    @property
    def dim(self) -> int:
        """Dimension over F_p."""
        return self.structure.shape[0]

    @property
    def size(self) -> int:
        """Number of elements."""
        return self.p**self.dim

    @property
    def zero(self) -> np.ndarray:
        """Zero element."""
        return np.zeros(self.dim, dtype=np.int64)

    def basis_element(self, i: int) -> np.ndarray:
        """The i-th basis vector."""
        e = self.zero
        e[i] = 1
        return e

    # -- arithmetic ------------------------------------------------------------

    def mul(self, x, y) -> np.ndarray:
        """Product x y, broadcasting over leading axes."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.einsum("...i,...j,ijk->...k", x, y, self.structure) % self.p

    def add(self, x, y) -> np.ndarray:
        """Sum."""
        return (np.asarray(x, dtype=np.int64) + np.asarray(y, dtype=np.int64)) % self.p

    def sub(self, x, y) -> np.ndarray:
        """Difference."""
        return (np.asarray(x, dtype=np.int64) - np.asarray(y, dtype=np.int64)) % self.p

    def scale(self, c: int, x) -> np.ndarray:
        """Scalar multiple by an integer read in F_p."""
        return (int(c) * np.asarray(x, dtype=np.int64)) % self.p

    def involution(self, x) -> np.ndarray:
        """sigma(x)."""
        return np.asarray(x, dtype=np.int64) @ self.sigma % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix L_x with ``x y = y @ L_x``."""
        return np.einsum("...i,ijk->...jk", np.asarray(x, dtype=np.int64), self.structure) % self.p

    def is_unit(self, x) -> bool:
        """Invertibility, decided by the left regular representation."""
        return linalg.det(self.field, self.left_matrix(x)) != 0

    def units_mask(self, X) -> np.ndarray:
        """Invertibility of a stack of elements."""
        X = np.asarray(X, dtype=np.int64)
        if self.dim == 0:
            return np.ones(X.shape[0], dtype=bool)
        return linalg.batch_nonsingular(self.field, self.left_matrix(X))

    def inverse(self, x) -> np.ndarray:
        """Two-sided inverse; raises InvariantError when x is not a unit."""
        if self.dim == 0:
            return self.zero
        y = linalg.solve(self.field, self.left_matrix(x).T, self.unit)
        if y is None or not np.array_equal(self.mul(x, y), self.unit):
            raise InvariantError("element is not invertible")
        return y

    def power(self, x, k: int) -> np.ndarray:
        """x^k for k >= 0."""
        result, base = self.unit.copy(), np.asarray(x, dtype=np.int64)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def act(self, e, z) -> np.ndarray:
        """The equivalence action z -> sigma(e) z e (broadcasting over e)."""
        return self.mul(self.involution(e), self.mul(z, e))

    # -- subspaces and enumeration ---------------------------------------------

    def hermitian_basis(self, epsilon: int) -> np.ndarray:
        """Basis (rows) of the subspace {z : sigma(z) = eps z}."""
        eps = eps_encoding(self.field, epsilon)
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        A = (self.sigma - eps * np.eye(self.dim, dtype=np.int64)) % self.p
        return linalg.nullspace(self.field, A.T)

    def is_hermitian(self, z, epsilon: int) -> bool:
        """sigma(z) = eps z and z invertible."""
        eps = eps_encoding(self.field, epsilon)
        z = np.asarray(z, dtype=np.int64) % self.p
        return np.array_equal(self.involution(z), eps * z % self.p) and self.is_unit(z)

    def index_of(self, x) -> int:
        """Position in enumeration order (first coordinate most significant)."""
        out = 0
        for c in np.asarray(x, dtype=np.int64) % self.p:
            out = out * self.p + int(c)
        return out

    def elements(self, start: int, stop: int) -> np.ndarray:
        """Elements with indices start..stop-1; lexicographic order is index order."""
        return linalg.enumerate_coefficients(self.p, self.dim, start, stop)[:, ::-1].copy()

    def iter_elements(self, budgets: Budgets = DEFAULT_BUDGETS) -> Iterator[np.ndarray]:
        """All elements in chunks, after a budget check."""
        budgets.check("enumeration", self.size)
        for start in range(0, self.size, CHUNK):
            yield self.elements(start, min(self.size, start + CHUNK))

    def span_elements(self, basis, start: int, stop: int) -> np.ndarray:
        """Elements of the span of basis rows, indexed like :meth:`elements` on the coefficients."""
        B = np.asarray(basis, dtype=np.int64)
        C = linalg.enumerate_coefficients(self.p, B.shape[0], start, stop)[:, ::-1]
        return C @ B % self.p

    def to_dict(self) -> Dict:
        """Plain-data view."""
        return {
            "name": self.name,
            "p": self.p,
            "dim": self.dim,
            "unit": self.unit.tolist(),
            "sigma": self.sigma.tolist(),
            "structure": self.structure.tolist(),
        }


@dataclass(frozen=True, eq=False)
class HermitianElement:
    """An invertible z with sigma(z) = eps z."""

    algebra: AlgebraWithInvolution
    epsilon: int
    z: np.ndarray

    def __post_init__(self):
        """Check the hermitian condition and invertibility."""
        z = np.asarray(self.z, dtype=np.int64) % self.algebra.p
        if not self.algebra.is_hermitian(z, self.epsilon):
            raise InvariantError("element is not an invertible eps-hermitian element")
        object.__setattr__(self, "z", z)


# -- constructions --------------------------------------------------------------


def endomorphism_algebra(X: EquivariantSpace) -> AlgebraWithInvolution:
    """
    End_G(M) with the adjoint involution tau(e) = B^-1 e^T B of the form of X.

    Over F_q with q = p^m the F_p-basis is ``alpha^l E_i`` (index ``i m + l``), E_i an
    F_q-basis of the intertwiners and alpha the root of the field modulus.

    :param X: Equivariant space.
    :return: Algebra with involution carrying its matrix model.
    """
    F = X.field
    d = X.dim
    if d == 0:
        zero = np.zeros((0, 0, 0), dtype=np.int64)
        return AlgebraWithInvolution(
            make_field(F.p), zero, np.zeros(0, dtype=np.int64), np.zeros((0, 0), dtype=np.int64),
            name="End(0)", model=MatrixModel(F, zero),
        )
    E = intertwiners(X.module, X.module)
    alpha = F.p ** np.arange(F.m, dtype=np.int64)
    basis = np.asarray(F.mul(E[:, None, :, :], alpha[None, :, None, None]), dtype=np.int64)
    basis = basis.reshape(-1, d, d)
    model = MatrixModel(F, basis)
    n = basis.shape[0]
    products = F.matmul(basis[:, None], basis[None, :])
    T = np.stack([model.from_matrix(P) for P in products.reshape(n * n, d, d)]).reshape(n, n, n)
    Binv = linalg.inverse(F, X.gram)
    adj = F.matmul(F.matmul(Binv, transpose(basis)), X.gram)
    S = np.stack([model.from_matrix(A) for A in adj])
    unit = model.from_matrix(np.eye(d, dtype=np.int64))
    name = f"End({X.group.name})"
    return AlgebraWithInvolution(make_field(F.p), T, unit, S, name=name, model=model)


def field_algebra(p: int) -> AlgebraWithInvolution:
    """F_p with the identity involution."""
    return AlgebraWithInvolution(
        make_field(p), np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64),
        np.ones((1, 1), dtype=np.int64), name=f"F_{p}",
    )


def extension_algebra(p: int, m: int, frobenius_involution: bool = True) -> AlgebraWithInvolution:
    """
    F_{p^m} over F_p in the power basis.

    :param p: Prime.
    :param m: Degree.
    :param frobenius_involution: Use x -> x^(p^(m/2)) (m even); otherwise the identity.
    """
    K = make_field(p, m)
    basis = p ** np.arange(m, dtype=np.int64)
    T = K.coords(np.asarray(K.mul(basis[:, None], basis[None, :])))
    if frobenius_involution:
        if m % 2:
            raise SpecError("the Frobenius involution needs an even degree")
        S = K.coords(np.asarray(K.frobenius(basis, m // 2)))
        name = f"F_{K.q} (Frobenius)"
    else:
        S = np.eye(m, dtype=np.int64)
        name = f"F_{K.q}"
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    return AlgebraWithInvolution(make_field(p), T, unit, S, name=name)


def matrix_algebra(A: AlgebraWithInvolution, n: int) -> AlgebraWithInvolution:
    """
    (A_n, sigma_n): n x n matrices over A with sigma_n(a)_{ij} = sigma(a_{ji}).

    The basis element E_ij b_k has index ``(i n + j) dim A + k``.
    """
    if n < 1:
        raise SpecError("matrix size must be positive")
    a = A.dim
    N = n * n * a
    T = np.zeros((n, n, a, n, n, a, n, n, a), dtype=np.int64)
    S = np.zeros((n, n, a, n, n, a), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                T[i, j, :, j, l, :, i, l, :] = A.structure
            S[i, j, :, j, i, :] = A.sigma
    unit = np.zeros((n, n, a), dtype=np.int64)
    for i in range(n):
        unit[i, i] = A.unit
    return AlgebraWithInvolution(
        A.field, T.reshape(N, N, N), unit.reshape(N), S.reshape(N, N), name=f"M_{n}({A.name})"
    )


def direct_product(A: AlgebraWithInvolution, B: AlgebraWithInvolution) -> AlgebraWithInvolution:
    """A x B with the product involution."""
    if A.p != B.p:
        raise SpecError("direct product of algebras in different characteristic")
    a, b = A.dim, B.dim
    T = np.zeros((a + b,) * 3, dtype=np.int64)
    T[:a, :a, :a] = A.structure
    T[a:, a:, a:] = B.structure
    S = np.zeros((a + b, a + b), dtype=np.int64)
    S[:a, :a] = A.sigma
    S[a:, a:] = B.sigma
    return AlgebraWithInvolution(
        A.field, T, np.concatenate([A.unit, B.unit]), S, name=f"{A.name} x {B.name}"
    )


def swap_algebra(A: AlgebraWithInvolution) -> AlgebraWithInvolution:
    """A x A^op with the exchange involution (x, y) -> (y, x)."""
    a = A.dim
    T = np.zeros((2 * a,) * 3, dtype=np.int64)
    T[:a, :a, :a] = A.structure
    T[a:, a:, a:] = np.transpose(A.structure, (1, 0, 2))
    S = np.zeros((2 * a, 2 * a), dtype=np.int64)
    S[:a, a:] = np.eye(a, dtype=np.int64)
    S[a:, :a] = np.eye(a, dtype=np.int64)
    return AlgebraWithInvolution(
        A.field, T, np.concatenate([A.unit, A.unit]), S, name=f"{A.name} x {A.name}^op"
    )


def truncated_polynomial_algebra(p: int, k: int) -> AlgebraWithInvolution:
    """F_p[t]/(t^k) with the identity involution, basis 1, t, ..., t^(k-1)."""
    if k < 1:
        raise SpecError("truncation degree must be positive")
    T = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k - i):
            T[i, j, i + j] = 1
    unit = np.zeros(k, dtype=np.int64)
    unit[0] = 1
    return AlgebraWithInvolution(
        make_field(p), T, unit, np.eye(k, dtype=np.int64), name=f"F_{p}[t]/(t^{k})"
    )


def upper_triangular_algebra(p: int, n: int = 2) -> AlgebraWithInvolution:
    """
    Upper-triangular n x n matrices over F_p with the anti-transpose involution.

    Basis E_ij (i <= j) in row-major order; sigma(E_ij) = E_{n-1-j, n-1-i}.
    """
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    where = {c: k for k, c in enumerate(cells)}
    N = len(cells)
    T = np.zeros((N, N, N), dtype=np.int64)
    S = np.zeros((N, N), dtype=np.int64)
    for a, (i, j) in enumerate(cells):
        for b, (k, l) in enumerate(cells):
            if j == k:
                T[a, b, where[(i, l)]] = 1
        S[a, where[(n - 1 - j, n - 1 - i)]] = 1
    unit = np.zeros(N, dtype=np.int64)
    for i in range(n):
        unit[where[(i, i)]] = 1
    return AlgebraWithInvolution(make_field(p), T, unit, S, name=f"T_{n}(F_{p})")


def subalgebra(
    E: AlgebraWithInvolution, basis, unit, name: str = ""
) -> Tuple[AlgebraWithInvolution, linalg.SubspaceCoordinates]:
    """
    A sigma-stable subalgebra with its own unit (for instance E e, e a central idempotent).

    :param E: Ambient algebra.
    :param basis: Rows spanning the subalgebra.
    :param unit: Its unit element, in E coordinates.
    :return: (algebra, coordinate map from E coordinates).
    """
    F = E.field
    B = linalg.row_space(F, basis)
    coords = linalg.SubspaceCoordinates(F, B)
    k = B.shape[0]
    products = E.mul(B[:, None, :], B[None, :, :]).reshape(k * k, E.dim)
    T = coords.coordinates(products).reshape(k, k, k)
    S = coords.coordinates(E.involution(B))
    u = coords.coordinates(np.asarray(unit, dtype=np.int64))
    return AlgebraWithInvolution(F, T, u, S, name=name or f"{E.name}[{k}]"), coords
