"""
Exact scalars for forms over k, k(i) and the quaternions, k modelled by the rationals.

Every scalar is a sympy ``Quaternion`` with rational components; k and k(i) are the
quaternions whose (c, d) respectively (b, c, d) parts vanish. Matrices are tuples of
rows.
"""

import re
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational
from sympy.algebras.quaternion import Quaternion

from gtrace.errors import SpecError

REAL = "real"
COMPLEX = "complex"
QUATERNION = "quaternion"
RINGS = (REAL, COMPLEX, QUATERNION)

TRIVIAL = "trivial"
CONJUGATION = "conjugation"
HYPERBOLIC = "hyperbolic"
ORTHOGONAL = "orthogonal"
INVOLUTIONS = (TRIVIAL, CONJUGATION, HYPERBOLIC, ORTHOGONAL)

Scalar = Quaternion
ExactMatrix = Tuple[Tuple[Quaternion, ...], ...]

TUPLE_RE = re.compile(r"^\((?P<body>[^()]*)\)$")


def scalar(a=0, b=0, c=0, d=0) -> Quaternion:
    """The quaternion a + b i + c j + d k with rational components."""
    return Quaternion(Rational(a), Rational(b), Rational(c), Rational(d))


ZERO = scalar()
ONE = scalar(1)
I = scalar(0, 1)
J = scalar(0, 0, 1)
K = scalar(0, 0, 0, 1)


def components(x: Quaternion) -> Tuple[Rational, Rational, Rational, Rational]:
    """(a, b, c, d)."""
    return (Rational(x.a), Rational(x.b), Rational(x.c), Rational(x.d))


def same(x: Quaternion, y: Quaternion) -> bool:
    """Componentwise equality."""
    return components(x) == components(y)


def is_zero(x: Quaternion) -> bool:
    """x = 0."""
    return all(v == 0 for v in components(x))


def neg(x: Quaternion) -> Quaternion:
    """-x."""
    a, b, c, d = components(x)
    return scalar(-a, -b, -c, -d)


def add(x: Quaternion, y: Quaternion) -> Quaternion:
    """x + y."""
    return scalar(*(u + v for u, v in zip(components(x), components(y))))


def mul(x: Quaternion, y: Quaternion) -> Quaternion:
    """x y."""
    a1, b1, c1, d1 = components(x)
    a2, b2, c2, d2 = components(y)
    return scalar(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def inverse(x: Quaternion) -> Quaternion:
    """x^-1 = conj(x) / |x|^2."""
    a, b, c, d = components(x)
    n = a * a + b * b + c * c + d * d
    if n == 0:
        raise SpecError("zero has no inverse")
    return scalar(a / n, -b / n, -c / n, -d / n)


def involution(x: Quaternion, kind: str) -> Quaternion:
    """
    Apply a ring involution.

    ``conjugation`` and ``hyperbolic`` negate every imaginary part (i -> -i on k(i),
    the standard involution on the quaternions); ``orthogonal`` is i, j, ij -> -i, j, ij.
    """
    a, b, c, d = components(x)
    if kind == TRIVIAL:
        return x
    if kind in (CONJUGATION, HYPERBOLIC):
        return scalar(a, -b, -c, -d)
    if kind == ORTHOGONAL:
        return scalar(a, -b, c, d)
    raise SpecError(f"unknown involution {kind!r}")


def in_ring(x: Quaternion, ring: str) -> bool:
    """Membership of x in k, k(i) or the quaternions."""
    _, b, c, d = components(x)
    if ring == REAL:
        return b == c == d == 0
    if ring == COMPLEX:
        return c == d == 0
    return True


def ring_units(ring: str) -> List[Quaternion]:
    """The basis 1, i, j, ij of the ring, truncated to its dimension."""
    return [ONE, I, J, K][: {REAL: 1, COMPLEX: 2, QUATERNION: 4}[ring]]


def real_part(x: Quaternion) -> Rational:
    """The k-component a."""
    return components(x)[0]


# -- matrices ----------------------------------------------------------------------


def as_matrix(rows: Sequence[Sequence[Quaternion]]) -> ExactMatrix:
    """Freeze a list of rows."""
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> ExactMatrix:
    """n x n identity."""
    return as_matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Matrix product."""
    n, m = len(A), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for k in range(len(B)):
                acc = add(acc, mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return as_matrix(out)


def star(A: ExactMatrix, kind: str) -> ExactMatrix:
    """Involution-transpose: ``star(A)[i][j] = sigma(A[j][i])``."""
    n = len(A)
    return as_matrix([[involution(A[j][i], kind) for j in range(n)] for i in range(n)])


def congruence(B: ExactMatrix, P: ExactMatrix, kind: str) -> ExactMatrix:
    """The congruent Gram matrix ``star(P) B P``."""
    return mat_mul(mat_mul(star(P, kind), B), P)


def block_diag(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Block-diagonal sum."""
    a, b = len(A), len(B)
    rows = [list(r) + [ZERO] * b for r in A] + [[ZERO] * a + list(r) for r in B]
    return as_matrix(rows)


def left_scale(c: Quaternion, A: ExactMatrix) -> ExactMatrix:
    """Entrywise c x."""
    return as_matrix([[mul(c, x) for x in row] for row in A])


def same_matrix(A: ExactMatrix, B: ExactMatrix) -> bool:
    """Entrywise equality."""
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(same(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def _left_real(x: Quaternion) -> List[List[Rational]]:
    a, b, c, d = components(x)
    return [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]


def is_invertible(A: ExactMatrix) -> bool:
    """Invertibility of x -> A x on column vectors, through its real 4n x 4n matrix."""
    n = len(A)
    if n == 0:
        return True
    M = Matrix.zeros(4 * n, 4 * n)
    for i in range(n):
        for j in range(n):
            block = _left_real(A[i][j])
            for r in range(4):
                for s in range(4):
                    M[4 * i + r, 4 * j + s] = block[r][s]
    return M.det() != 0


# -- text -------------------------------------------------------------------------


def format_scalar(x: Quaternion, ring: str) -> str:
    """Fraction string for k, ``(a,b)`` for k(i), ``(a,b,c,d)`` for the quaternions."""
    parts = components(x)
    if ring == REAL:
        return str(parts[0])
    if ring == COMPLEX:
        return f"({parts[0]},{parts[1]})"
    return "(" + ",".join(str(p) for p in parts) + ")"


def parse_scalar(text: str, ring: str, line: Optional[int] = None) -> Quaternion:
    """
    Inverse of :func:`format_scalar`; only rational components are accepted.

    :raises SpecError: On malformed text, irrational components or a value outside the ring.
    """
    text = text.strip()
    m = TUPLE_RE.match(text)
    fields = m.group("body").split(",") if m else [text]
    try:
        values = [Rational(f.strip()) for f in fields]
    except (TypeError, ValueError, SyntaxError) as err:
        raise SpecError(f"not an exact rational scalar: {text!r}", line) from err
    if len(values) > 4:
        raise SpecError(f"too many components in {text!r}", line)
    x = scalar(*values)
    if not in_ring(x, ring):
        raise SpecError(f"{text!r} does not lie in the {ring} ring", line)
    return x
