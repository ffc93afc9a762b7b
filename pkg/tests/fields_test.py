"""Tests for finite fields, linear algebra and polynomials over them."""

import unittest

import numpy as np
from parameterized import parameterized

from gtrace.config import Budgets
from gtrace.errors import BudgetExceededError, InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc, FieldElement, field_embedding, make_field
from gtrace.fields.polynomials import factor_poly, poly_mul, poly_product


class TestFieldDesc(unittest.TestCase):
    """Arithmetic on encodings."""

    def test_f9_modulus_and_square_root_of_minus_one(self):
        """F_9 = F_3[a]/(a^2 + 1); a is encoded as 3 and a^2 = -1."""
        F = make_field(3, 2)
        self.assertEqual(F.modulus, (1, 0, 1))
        self.assertEqual(F.mul(3, 3), 2)
        self.assertEqual(F.q, 9)

    @parameterized.expand([(3, 1), (5, 1), (3, 2), (7, 1), (5, 2), (3, 3)])
    def test_inverse(self, p, m):
        """x x^-1 = 1 for every nonzero x."""
        F = make_field(p, m)
        x = F.elements()[1:]
        self.assertTrue(np.all(F.mul(x, F.inv(x)) == 1))

    @parameterized.expand([(3, 2), (5, 2), (7, 3), (11, 2)])
    def test_nonsquare(self, p, expected):
        """Least non-square of F_p."""
        self.assertEqual(make_field(p).nonsquare, expected)

    def test_square_class(self):
        """Square classes are 1 or the least non-square."""
        F = make_field(5)
        self.assertEqual([F.square_class(x) for x in range(1, 5)], [1, 2, 2, 1])

    def test_is_square_rejects_zero(self):
        """Zero has no square class."""
        with self.assertRaises(SpecError):
            make_field(5).is_square(0)

    def test_frobenius_fixes_prime_field(self):
        """x^p = x exactly on F_p inside F_{p^m}."""
        F = make_field(3, 2)
        fixed = [x for x in range(F.q) if F.frobenius(x) == x]
        self.assertEqual(fixed, [0, 1, 2])

    def test_trace(self):
        """Tr(a) = 0 and Tr(1) = 2 in F_9 over F_3."""
        F = make_field(3, 2)
        self.assertEqual(F.trace_to_base(3), 0)
        self.assertEqual(F.trace_to_base(1), 2)

    def test_even_characteristic_rejected(self):
        """Characteristic 2 is excluded."""
        with self.assertRaises(SpecError):
            make_field(2)

    def test_reducible_modulus_rejected(self):
        """A reducible modulus violates the field invariant."""
        with self.assertRaises(InvariantError):
            FieldDesc(3, 2, (1, 0, 2))

    def test_field_size_budget(self):
        """Field size is bounded."""
        with self.assertRaises(BudgetExceededError):
            make_field(3, 5, Budgets(max_field_size=100))

    def test_embedding_is_multiplicative(self):
        """F_9 embeds in F_81 as a subring."""
        small, big = make_field(3, 2), make_field(3, 4)
        table = field_embedding(small, big)
        x, y = np.meshgrid(small.elements(), small.elements())
        self.assertTrue(np.array_equal(table[small.mul(x, y)], big.mul(table[x], table[y])))

    def test_field_element_coords(self):
        """Coordinates round through the element wrapper."""
        F = make_field(5, 2)
        e = FieldElement.from_coords(F, [2, 3])
        self.assertEqual(e.value, 17)
        self.assertEqual(e.coords, [2, 3])


class TestLinalg(unittest.TestCase):
    """Matrices over F_q."""

    def setUp(self):
        """F_5."""
        self.F = make_field(5)

    def test_inverse_and_det(self):
        """A A^-1 = I and det of a 2x2 matrix."""
        A = np.array([[1, 2], [3, 4]])
        self.assertEqual(linalg.det(self.F, A), (4 - 6) % 5)
        Ainv = linalg.inverse(self.F, A)
        self.assertTrue(np.array_equal(self.F.matmul(A, Ainv), np.eye(2, dtype=np.int64)))

    def test_singular_inverse(self):
        """Singular matrices have no inverse."""
        with self.assertRaises(InvariantError):
            linalg.inverse(self.F, [[1, 2], [2, 4]])

    def test_nullspace(self):
        """Kernel of a rank two 2x3 matrix."""
        A = np.array([[1, 2, 3], [0, 1, 1]])
        N = linalg.nullspace(self.F, A)
        self.assertEqual(N.shape, (1, 3))
        self.assertTrue(np.all(self.F.matmul(A, N.T) == 0))

    def test_solve(self):
        """Solutions satisfy the system; inconsistent systems give None."""
        A = np.array([[1, 1], [0, 1]])
        x = linalg.solve(self.F, A, [3, 1])
        self.assertEqual(list(self.F.matmul(A, x.reshape(2, 1)).ravel()), [3, 1])
        self.assertIsNone(linalg.solve(self.F, [[1, 1], [1, 1]], [0, 1]))

    def test_batch_nonsingular(self):
        """Vectorised nonsingularity agrees with det."""
        mats = np.array([[[1, 0], [0, 1]], [[1, 2], [2, 4]], [[0, 1], [1, 0]], [[0, 0], [0, 0]]])
        self.assertEqual(list(linalg.batch_nonsingular(self.F, mats)), [True, False, True, False])

    def test_matmul_extension_field(self):
        """Matrix products in F_9 use field multiplication."""
        F = make_field(3, 2)
        A = np.array([[3]])
        self.assertEqual(int(F.matmul(A, A)[0, 0]), 2)

    def test_subspace_coordinates(self):
        """Coordinates in a subspace basis recombine to the vector."""
        S = linalg.SubspaceCoordinates(self.F, [[1, 0, 1], [0, 1, 1]])
        v = np.array([[2, 3, 0]])
        c = S.coordinates(v)
        self.assertTrue(np.array_equal(S.combine(c), v))
        self.assertFalse(S.contains(np.array([[1, 0, 0]])))


class TestPolynomials(unittest.TestCase):
    """Factorization over F_q."""

    def test_factor_x2_minus_1(self):
        """t^2 - 1 = (t + 1)(t - 1) over F_5."""
        F = make_field(5)
        lc, factors = factor_poly(F, [1, 0, 4])
        self.assertEqual(lc, 1)
        self.assertEqual(sorted(f for f, _ in factors), [[1, 1], [1, 4]])

    def test_irreducible_stays(self):
        """t^2 + 1 is irreducible over F_3."""
        lc, factors = factor_poly(make_field(3), [1, 0, 1])
        self.assertEqual(factors, [([1, 0, 1], 1)])

    def test_product_round_trip(self):
        """Multiplying the factors back gives the polynomial."""
        F = make_field(3, 2)
        f = poly_mul(F, poly_mul(F, [1, 3], [1, 3]), [1, 0, 1, 1])
        lc, factors = factor_poly(F, f)
        self.assertEqual(poly_product(F, lc, factors), f)
