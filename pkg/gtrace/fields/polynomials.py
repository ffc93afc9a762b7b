"""
Dense univariate polynomials over F_q.

Polynomials are lists of encodings with the leading coefficient first, ``[]`` being
zero, the same layout as ``sympy.polys.galoistools`` but over any F_q.
"""

from typing import List, Tuple

import numpy as np

from gtrace.errors import InvariantError, SpecError
from gtrace.fields.finite_field import FieldDesc

Poly = List[int]


def poly_strip(f) -> Poly:
    """Drop leading zeros."""
    f = [int(c) for c in f]
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    return f[k:]


def poly_degree(f: Poly) -> int:
    """Degree, -1 for zero."""
    return len(poly_strip(f)) - 1


def poly_add(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Sum."""
    n = max(len(f), len(g))
    a = [0] * (n - len(f)) + list(f)
    b = [0] * (n - len(g)) + list(g)
    if n == 0:
        return []
    return poly_strip(F.add(np.array(a), np.array(b)))


def poly_neg(F: FieldDesc, f: Poly) -> Poly:
    """Negation."""
    if not f:
        return []
    return poly_strip(F.neg(np.array(f)))


def poly_sub(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Difference."""
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F: FieldDesc, c: int, f: Poly) -> Poly:
    """Scalar multiple."""
    if not f:
        return []
    return poly_strip(F.mul(c, np.array(f)))


def poly_mul(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Product."""
    f, g = poly_strip(f), poly_strip(g)
    if not f or not g:
        return []
    res = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    gv = np.array(g, dtype=np.int64)
    for i, a in enumerate(f):
        if a:
            res[i : i + len(g)] = F.add(res[i : i + len(g)], F.mul(a, gv))
    return poly_strip(res)


def poly_divmod(F: FieldDesc, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """
    Euclidean division f = q g + r.

    :param F: Field.
    :param f: Dividend.
    :param g: Nonzero divisor.
    :return: (q, r).
    """
    f, g = poly_strip(f), poly_strip(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], f
    inv_lc = F.inv(g[0])
    rem = np.array(f, dtype=np.int64)
    gv = np.array(g, dtype=np.int64)
    quo = np.zeros(len(f) - len(g) + 1, dtype=np.int64)
    for i in range(len(quo)):
        c = F.mul(int(rem[i]), inv_lc)
        quo[i] = c
        if c:
            rem[i : i + len(g)] = F.sub(rem[i : i + len(g)], F.mul(c, gv))
    return poly_strip(quo), poly_strip(rem[len(quo) :])


def poly_rem(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Remainder of f modulo g."""
    return poly_divmod(F, f, g)[1]


def poly_quo(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Exact quotient; raises when g does not divide f."""
    q, r = poly_divmod(F, f, g)
    if r:
        raise InvariantError("inexact polynomial division")
    return q


def poly_monic(F: FieldDesc, f: Poly) -> Tuple[int, Poly]:
    """Leading coefficient and monic associate."""
    f = poly_strip(f)
    if not f:
        return 0, []
    lc = f[0]
    return lc, poly_scale(F, F.inv(lc), f)


def poly_gcd(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    f, g = poly_strip(f), poly_strip(g)
    while g:
        f, g = g, poly_rem(F, f, g)
    return poly_monic(F, f)[1]


def poly_xgcd(F: FieldDesc, f: Poly, g: Poly) -> Tuple[Poly, Poly, Poly]:
    """
    Extended Euclid: (d, s, t) with s f + t g = d, d the monic gcd.

    :param F: Field.
    :param f: First polynomial.
    :param g: Second polynomial.
    """
    r0, r1 = poly_strip(f), poly_strip(g)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if not r0:
        return [], [], []
    inv_lc = F.inv(r0[0])
    return poly_scale(F, inv_lc, r0), poly_scale(F, inv_lc, s0), poly_scale(F, inv_lc, t0)


def poly_inv_mod(F: FieldDesc, f: Poly, g: Poly) -> Poly:
    """Inverse of f modulo g; raises when they are not coprime."""
    d, s, _ = poly_xgcd(F, poly_rem(F, f, g), g)
    if d != [1]:
        raise InvariantError("polynomial is not invertible modulo the modulus")
    return poly_rem(F, s, g)


def poly_diff(F: FieldDesc, f: Poly) -> Poly:
    """Formal derivative."""
    f = poly_strip(f)
    n = len(f) - 1
    return poly_strip([F.mul(F.from_int(n - i), c) for i, c in enumerate(f[:-1])])


def poly_pow_mod(F: FieldDesc, f: Poly, n: int, g: Poly) -> Poly:
    """f^n mod g by repeated squaring."""
    result: Poly = [1]
    base = poly_rem(F, f, g)
    while n:
        if n & 1:
            result = poly_rem(F, poly_mul(F, result, base), g)
        base = poly_rem(F, poly_mul(F, base, base), g)
        n >>= 1
    return poly_rem(F, result, g)


def poly_from_index(q: int, k: int) -> Poly:
    """Polynomial whose coefficients (low to high) are the base-q digits of k."""
    digits = []
    while k:
        digits.append(k % q)
        k //= q
    return poly_strip(list(reversed(digits)))


def sqf_list(F: FieldDesc, f: Poly) -> Tuple[int, List[Tuple[Poly, int]]]:
    """
    Square-free decomposition of f.

    :param F: Field.
    :param f: Nonzero polynomial.
    :return: (leading coefficient, [(square-free monic factor, exponent)]).
    """
    n, factors, r = 1, [], F.p
    lc, f = poly_monic(F, f)
    if poly_degree(f) < 1:
        return lc, []
    root_exp = F.q // F.p
    while True:
        sqf = False
        D = poly_diff(F, f)
        if D:
            g = poly_gcd(F, f, D)
            h = poly_quo(F, f, g)
            i = 1
            while h != [1]:
                G = poly_gcd(F, g, h)
                H = poly_quo(F, h, G)
                if poly_degree(H) > 0:
                    factors.append((H, i * n))
                g, h, i = poly_quo(F, g, G), G, i + 1
            if g == [1]:
                sqf = True
            else:
                f = g
        if sqf:
            break
        # f is a polynomial in x^p: take the p-th root coefficientwise
        d = poly_degree(f) // r
        f = [int(F.power(f[i * r], root_exp)) for i in range(d + 1)]
        n *= r
    return lc, factors


def ddf(F: FieldDesc, f: Poly) -> List[Tuple[Poly, int]]:
    """
    Distinct-degree factorization of a monic square-free polynomial.

    :return: [(product of all irreducible factors of degree d, d)].
    """
    i, h, factors = 1, [1, 0], []
    x = [1, 0]
    while 2 * i <= poly_degree(f):
        h = poly_pow_mod(F, h, F.q, f)
        g = poly_gcd(F, f, poly_sub(F, h, x))
        if g != [1]:
            factors.append((g, i))
            f = poly_quo(F, f, g)
            h = poly_rem(F, h, f)
        i += 1
    if f != [1]:
        factors.append((f, poly_degree(f)))
    return factors


def edf(F: FieldDesc, f: Poly, d: int) -> List[Poly]:
    """
    Equal-degree splitting of a monic square-free product of degree-d irreducibles.

    Splitting candidates are scanned in index order, so the result is deterministic.
    """
    if poly_degree(f) <= d:
        return [f]
    exponent = (F.q**d - 1) // 2
    k = 1
    while True:
        a = poly_from_index(F.q, k)
        k += 1
        if poly_degree(a) < 1:
            continue
        g = poly_gcd(F, f, a)
        if g == [1]:
            h = poly_pow_mod(F, a, exponent, f)
            g = poly_gcd(F, f, poly_sub(F, h, [1]))
        if g != [1] and g != f:
            return edf(F, g, d) + edf(F, poly_quo(F, f, g), d)
        if k > F.q ** poly_degree(f):
            raise InvariantError("equal-degree splitting found no splitter")


def factor_poly(F: FieldDesc, f: Poly) -> Tuple[int, List[Tuple[Poly, int]]]:
    """
    Complete factorization over F_q.

    :param F: Field.
    :param f: Nonzero polynomial, coefficients high to low.
    :return: (leading coefficient, sorted [(monic irreducible, multiplicity)]).
    """
    f = poly_strip(f)
    if not f:
        raise SpecError("cannot factor the zero polynomial")
    lc, sqf = sqf_list(F, f)
    factors = []
    for g, mult in sqf:
        for h, d in ddf(F, g):
            for irr in edf(F, h, d):
                factors.append((irr, mult))
    factors.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return lc, factors


def poly_product(F: FieldDesc, lc: int, factors: List[Tuple[Poly, int]]) -> Poly:
    """Multiply a factorization back out."""
    result: Poly = [lc] if lc else []
    for g, mult in factors:
        for _ in range(mult):
            result = poly_mul(F, result, g)
    return result
