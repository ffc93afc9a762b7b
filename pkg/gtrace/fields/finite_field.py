"""
Finite fields F_q, q = p^m with p odd.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` where
``c_0 + c_1 a + ... + c_{m-1} a^{m-1}`` is the element written in the power basis
of a root ``a`` of the field modulus. The prime subfield is therefore encoded by
``0 .. p-1`` in every extension. All arithmetic methods accept Python ints or numpy
arrays of encodings and broadcast like numpy ufuncs.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from sympy import isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import InvariantError, SpecError


def _out(x):
    """Unwrap 0-d results to Python ints."""
    if np.ndim(x) == 0:
        return int(x)
    return x


@dataclass(frozen=True)
class FieldDesc:
    """The field F_{p^m} with a fixed monic irreducible modulus (coefficients high to low)."""

    p: int
    m: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        """Check the standing hypotheses: odd prime characteristic, irreducible modulus."""
        if self.p == 2 or not isprime(self.p):
            raise SpecError(f"characteristic must be an odd prime, got {self.p}")
        if self.m < 1 or len(self.modulus) != self.m + 1 or self.modulus[0] != 1:
            raise SpecError(f"modulus {self.modulus} is not monic of degree {self.m}")
        if not gf_irreducible_p([int(c) for c in self.modulus], self.p, ZZ):
            raise InvariantError(f"modulus {self.modulus} is reducible over F_{self.p}")

    def __repr__(self) -> str:
        """Short name such as F_9."""
        return f"F_{self.q}"

    @property
    def q(self) -> int:
        """Field size."""
        return self.p**self.m

    @property
    def is_prime(self) -> bool:
        """True for the prime field."""
        return self.m == 1

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def _modulus_low(self) -> List[int]:
        return list(reversed(self.modulus))[: self.m]

    # -- encodings -------------------------------------------------------------

    def coords(self, x) -> np.ndarray:
        """
        Power-basis coordinates of encoded elements.

        :param x: Encoding or array of encodings.
        :return: Array of shape ``x.shape + (m,)``.
        """
        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self._weights) % self.p

    def encode(self, coords) -> int:
        """
        Encode power-basis coordinates, last axis is the coordinate axis.

        :param coords: Sequence or array of coordinates c_0..c_{m-1}.
        :return: Encoding(s).
        """
        c = np.asarray(coords, dtype=np.int64) % self.p
        return _out(c @ self._weights)

    def elements(self) -> np.ndarray:
        """All elements in encoding order."""
        return np.arange(self.q, dtype=np.int64)

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return int(n) % self.p

    # -- slow scalar arithmetic, used to build the tables ----------------------

    def _mulmod(self, a: int, b: int) -> int:
        ca = [int(c) for c in self.coords(a)]
        cb = [int(c) for c in self.coords(b)]
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        for k in range(2 * self.m - 2, self.m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, mc in enumerate(self._modulus_low):
                    prod[k - self.m + i] = (prod[k - self.m + i] - c * mc) % self.p
        return int(self.encode(prod[: self.m]))

    def _powmod(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mulmod(result, base)
            base = self._mulmod(base, base)
            k >>= 1
        return result

    @cached_property
    def primitive_element(self) -> int:
        """Least encoding generating the multiplicative group."""
        order = self.q - 1
        factors = primefactors(order)
        for g in range(2 if self.q > 3 else 1, self.q):
            if all(self._powmod(g, order // r) != 1 for r in factors):
                return g
        raise InvariantError(f"no primitive element found in {self!r}")

    @cached_property
    def _tables(self) -> Tuple[np.ndarray, np.ndarray]:
        exp = np.zeros(self.q - 1, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        g, x = self.primitive_element, 1
        for k in range(self.q - 1):
            exp[k] = x
            log[x] = k
            x = self._mulmod(x, g)
        return exp, log

    # -- vectorised arithmetic -------------------------------------------------

    def add(self, a, b):
        """Sum of encodings."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return _out((a + b) % self.p)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._weights:
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return _out(out)

    def neg(self, a):
        """Additive inverse."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return _out((-a) % self.p)
        out = np.zeros(a.shape, dtype=np.int64)
        for w in self._weights:
            out += ((-((a // w) % self.p)) % self.p) * w
        return _out(out)

    def sub(self, a, b):
        """Difference of encodings."""
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        """Product of encodings."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return _out((a * b) % self.p)
        exp, log = self._tables
        idx = (log[a] + log[b]) % (self.q - 1)
        return _out(np.where((a == 0) | (b == 0), 0, exp[idx]))

    def power(self, a, k: int):
        """
        Raise encodings to an integer power (negative powers invert).

        :param a: Encoding(s).
        :param k: Exponent.
        """
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.power(self.inv(a), -k)
        if k == 0:
            return _out(np.ones(a.shape, dtype=np.int64))
        if self.m == 1:
            result = np.ones(a.shape, dtype=np.int64)
            base = a % self.p
            while k:
                if k & 1:
                    result = (result * base) % self.p
                base = (base * base) % self.p
                k >>= 1
            return _out(result)
        exp, log = self._tables
        idx = (log[a] * (k % (self.q - 1))) % (self.q - 1)
        return _out(np.where(a == 0, 0, exp[idx]))

    def inv(self, a):
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"zero has no inverse in {self!r}")
        if self.m == 1:
            return self.power(a, self.p - 2)
        exp, log = self._tables
        return _out(exp[(-log[a]) % (self.q - 1)])

    def div(self, a, b):
        """Quotient a / b."""
        return self.mul(a, self.inv(b))

    def frobenius(self, a, times: int = 1):
        """x -> x^(p^times)."""
        return self.power(a, self.p**times)

    # -- matrices --------------------------------------------------------------

    def matmul(self, A, B) -> np.ndarray:
        """
        Matrix product over the field, with numpy batch broadcasting.

        :param A: Array (..., n, k).
        :param B: Array (..., k, l).
        :return: Array (..., n, l).
        """
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.m == 1:
            return np.matmul(A, B) % self.p
        shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
        acc = np.zeros(shape, dtype=np.int64)
        for k in range(A.shape[-1]):
            acc = self.add(acc, self.mul(A[..., :, k : k + 1], B[..., k : k + 1, :]))
        return np.asarray(acc, dtype=np.int64)

    def kron(self, A, B) -> np.ndarray:
        """Kronecker product of two matrices."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        prod = self.mul(A[:, None, :, None], B[None, :, None, :])
        prod = np.asarray(prod, dtype=np.int64)
        return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])

    def eye(self, n: int) -> np.ndarray:
        """Identity matrix."""
        return np.eye(n, dtype=np.int64)

    def scale(self, c: int, A) -> np.ndarray:
        """Scalar multiple of a matrix."""
        return np.asarray(self.mul(c, np.asarray(A, dtype=np.int64)), dtype=np.int64)

    # -- named operations ------------------------------------------------------

    def trace_to_base(self, x):
        """
        Field trace to F_p: x + x^p + ... + x^(p^(m-1)).

        :param x: Encoding(s).
        :return: Prime-field encoding(s).
        """
        acc = np.zeros(np.shape(x), dtype=np.int64)
        y = np.asarray(x, dtype=np.int64)
        for _ in range(self.m):
            acc = np.asarray(self.add(acc, y), dtype=np.int64)
            y = np.asarray(self.frobenius(y), dtype=np.int64)
        if np.any(acc >= self.p):
            raise InvariantError("trace left the prime field")
        return _out(acc)

    def is_square(self, a):
        """
        Euler criterion a^((q-1)/2) = 1.

        :param a: Nonzero encoding(s).
        :return: bool or bool array.
        """
        arr = np.asarray(a, dtype=np.int64)
        if np.any(arr == 0):
            raise SpecError("is_square is defined on nonzero elements only")
        res = np.asarray(self.power(arr, (self.q - 1) // 2)) == 1
        return bool(res) if res.ndim == 0 else res

    @cached_property
    def nonsquare(self) -> int:
        """Least non-square encoding."""
        squares = np.asarray(self.is_square(self.elements()[1:]))
        return int(np.nonzero(~squares)[0][0]) + 1

    def square_class(self, a) -> int:
        """Representative of the class of a in F_q^x / squares: 1 or the least non-square."""
        return 1 if self.is_square(a) else self.nonsquare


@dataclass(frozen=True)
class FieldElement:
    """A single field element; used at serialization boundaries."""

    field: FieldDesc
    value: int

    @property
    def coords(self) -> List[int]:
        """Coefficient vector [c0, ..., c_{m-1}]."""
        return [int(c) for c in self.field.coords(self.value)]

    @classmethod
    def from_coords(cls, field: FieldDesc, coords: Sequence[int]) -> "FieldElement":
        """Build from a coefficient vector."""
        if len(coords) != field.m:
            raise SpecError(f"expected {field.m} coordinates, got {len(coords)}")
        return cls(field, int(field.encode(coords)))


def smallest_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible polynomial of degree m over F_p.

    :param p: Prime.
    :param m: Degree.
    :return: Coefficients, high to low.
    """
    for tail in itertools.product(range(p), repeat=m):
        f = [1, *tail]
        if gf_irreducible_p(f, p, ZZ):
            return tuple(f)
    raise InvariantError(f"no irreducible polynomial of degree {m} over F_{p}")


@lru_cache(maxsize=None)
def _make_field(p: int, m: int) -> FieldDesc:
    return FieldDesc(p, m, smallest_irreducible(p, m))


def make_field(p: int, m: int = 1, budgets: Budgets = DEFAULT_BUDGETS) -> FieldDesc:
    """
    Build F_{p^m} with the deterministic modulus.

    :param p: Odd prime.
    :param m: Extension degree.
    :param budgets: Size limits.
    :return: FieldDesc.
    """
    if p == 2 or not isprime(p):
        raise SpecError(f"characteristic must be an odd prime, got {p}")
    if m < 1:
        raise SpecError(f"extension degree must be positive, got {m}")
    budgets.check("max_field_size", p**m)
    return _make_field(p, m)


@lru_cache(maxsize=None)
def field_embedding(small: FieldDesc, big: FieldDesc) -> np.ndarray:
    """
    Embed F_{p^a} into F_{p^ab} through the first root of the small modulus.

    :param small: Source field.
    :param big: Target field.
    :return: Lookup table, ``table[x]`` is the image of encoding x.
    """
    if small.p != big.p or big.m % small.m:
        raise SpecError(f"{small!r} does not embed in {big!r}")
    if small.m == 1:
        return np.arange(small.q, dtype=np.int64)
    xs = big.elements()
    acc = np.zeros(big.q, dtype=np.int64)
    for c in small.modulus:
        acc = big.add(big.mul(acc, xs), c)
    root = int(np.nonzero(acc == 0)[0][0])
    powers = np.array([big.power(root, i) for i in range(small.m)], dtype=np.int64)
    digits = small.coords(small.elements())
    table = np.zeros(small.q, dtype=np.int64)
    for i in range(small.m):
        table = big.add(table, big.mul(digits[:, i], powers[i]))
    return np.asarray(table, dtype=np.int64)
