"""Tests for algebras with involution and their hermitian classes."""

import unittest

import numpy as np
from parameterized import parameterized

from gtrace.catalog import catalog_group
from gtrace.config import Budgets
from gtrace.errors import BudgetExceededError, InvariantError, SpecError
from gtrace.fields.finite_field import make_field
from gtrace.forms.constructions import permutation_form
from gtrace.groups.gset import regular_gset
from gtrace.hermitian.algebra import (
    AlgebraWithInvolution,
    HermitianElement,
    direct_product,
    endomorphism_algebra,
    extension_algebra,
    field_algebra,
    matrix_algebra,
    swap_algebra,
    truncated_polynomial_algebra,
    upper_triangular_algebra,
)
from gtrace.hermitian.classes import class_set_exhaustive, diagonal_embed, hermitian_units
from gtrace.hermitian.radical import (
    invertibility_radical,
    jacobson_radical,
    quasi_regular,
    reduce_mod_radical,
    trace_ladder_radical,
)
from gtrace.hermitian.structural import classify_classes_structural, classify_element, same_class
from gtrace.hermitian.wedderburn import (
    EXCHANGE,
    ORTHOGONAL,
    SIMPLE,
    SWAP,
    UNITARY,
    split_semisimple,
)

ALGEBRAS = {
    "F5": lambda: field_algebra(5),
    "F9_frobenius": lambda: extension_algebra(3, 2),
    "M2_F3": lambda: matrix_algebra(field_algebra(3), 2),
    "F5_swap": lambda: swap_algebra(field_algebra(5)),
    "F3_dual_numbers": lambda: truncated_polynomial_algebra(3, 2),
    "T2_F3": lambda: upper_triangular_algebra(3, 2),
    "F5xF5": lambda: direct_product(field_algebra(5), field_algebra(5)),
}

# 3^8 elements each
LARGE_ALGEBRAS = {
    "M2_F3_dual_numbers": lambda: matrix_algebra(truncated_polynomial_algebra(3, 2), 2),
    "M2_F3xM2_F3": lambda: direct_product(
        matrix_algebra(field_algebra(3), 2), matrix_algebra(field_algebra(3), 2)
    ),
    "M2_F3_swap": lambda: swap_algebra(matrix_algebra(field_algebra(3), 2)),
}
ALL_ALGEBRAS = {**ALGEBRAS, **LARGE_ALGEBRAS}


class TestAlgebra(unittest.TestCase):
    """Construction and validation."""

    def test_non_associative_rejected(self):
        """Structure constants must be associative."""
        T = np.zeros((3, 3, 3), dtype=np.int64)
        T[1, 1, 2] = 1
        T[2, 1, 1] = 1
        with self.assertRaises(InvariantError):
            AlgebraWithInvolution(make_field(3), T, [1, 0, 0], np.eye(3, dtype=np.int64))

    def test_extension_field_rejected(self):
        """Algebras live over the prime field."""
        with self.assertRaises(SpecError):
            AlgebraWithInvolution(make_field(3, 2), np.ones((1, 1, 1)), [1], [[1]])

    def test_inverse(self):
        """x x^-1 = 1 in M_2(F_3)."""
        E = matrix_algebra(field_algebra(3), 2)
        x = np.array([1, 1, 0, 1])
        self.assertTrue(np.array_equal(E.mul(x, E.inverse(x)), E.unit))

    def test_hermitian_element_validated(self):
        """A non-unit is rejected."""
        E = truncated_polynomial_algebra(3, 2)
        with self.assertRaises(InvariantError):
            HermitianElement(E, 1, [0, 1])

    def test_endomorphism_algebra_of_regular_form(self):
        """End of the regular permutation form of C2 is 2-dimensional with trivial involution."""
        X = permutation_form(regular_gset(catalog_group("C2")), make_field(5))
        E = endomorphism_algebra(X)
        self.assertEqual(E.dim, 2)
        self.assertTrue(np.array_equal(E.sigma, np.eye(2, dtype=np.int64)))


class TestClasses(unittest.TestCase):
    """Exhaustive and structural hermitian classes."""

    @parameterized.expand(
        [
            ("F5", 1, 2),
            ("F5", -1, 0),
            ("F9_frobenius", 1, 1),
            ("F9_frobenius", -1, 1),
            ("M2_F3", 1, 2),
            ("M2_F3", -1, 1),
            ("F5_swap", 1, 1),
            ("F5_swap", -1, 1),
            ("F3_dual_numbers", 1, 2),
            ("T2_F3", 1, 1),
            ("T2_F3", -1, 1),
            ("F5xF5", 1, 4),
            ("F5xF5", -1, 0),
        ]
    )
    def test_counts_agree(self, name, epsilon, count):
        """Both methods find the same number of classes."""
        E = ALGEBRAS[name]()
        self.assertEqual(len(class_set_exhaustive(E, epsilon)), count)
        self.assertEqual(len(classify_classes_structural(E, epsilon)), count)

    def test_regular_c2_endomorphisms(self):
        """End of the regular form of C2 over F_5 is F_5 x F_5: four classes."""
        X = permutation_form(regular_gset(catalog_group("C2")), make_field(5))
        E = endomorphism_algebra(X)
        self.assertEqual(len(class_set_exhaustive(E, 1)), 4)
        self.assertEqual(len(classify_classes_structural(E, 1)), 4)

    def test_orbits_partition(self):
        """Exhaustive orbit sizes add up to the number of hermitian units."""
        E = field_algebra(5)
        classes = class_set_exhaustive(E, 1)
        self.assertEqual(sum(classes.orbit_sizes), 4)
        self.assertEqual(classes.class_of([4]), classes.class_of([1]))
        self.assertNotEqual(classes.class_of([2]), classes.class_of([1]))

    def test_structural_representatives_are_hermitian(self):
        """Lifted representatives are invertible and hermitian."""
        E = truncated_polynomial_algebra(5, 3)
        for z in classify_classes_structural(E, 1).classes:
            self.assertTrue(E.is_hermitian(z, 1))

    @parameterized.expand([([1], [4], True), ([1], [2], False), ([2], [3], True)])
    def test_same_class(self, z1, z2, expected):
        """Square classes of F_5."""
        E = field_algebra(5)
        decision = same_class(E, 1, z1, z2)
        self.assertEqual(decision.same, expected)
        if expected:
            self.assertTrue(np.array_equal(E.act(decision.witness, z1), np.asarray(z2)))

    def test_same_class_through_radical(self):
        """1 + t and 1 are congruent in F_3[t]/(t^2); the witness is lifted."""
        E = truncated_polynomial_algebra(3, 2)
        decision = same_class(E, 1, [1, 0], [1, 1])
        self.assertTrue(decision.same)
        self.assertTrue(np.array_equal(E.act(decision.witness, [1, 0]), [1, 1]))

    def test_diagonal_embed(self):
        """diag(2, 2) in M_2(F_5) is hermitian."""
        u = HermitianElement(field_algebra(5), 1, [2])
        un = diagonal_embed(u, 2)
        self.assertEqual(un.algebra.dim, 4)
        self.assertEqual(un.z.tolist(), [2, 0, 0, 2])


class TestStructure(unittest.TestCase):
    """Radical and Wedderburn splitting."""

    @parameterized.expand([("F5", 0), ("M2_F3", 0), ("F3_dual_numbers", 1), ("T2_F3", 1)])
    def test_radical_dimension(self, name, dim):
        """Dimension of the Jacobson radical."""
        self.assertEqual(len(jacobson_radical(ALGEBRAS[name]())), dim)

    @parameterized.expand([(name,) for name in ALL_ALGEBRAS])
    def test_criterion_matches_trace_ladder(self, name):
        """The 1 - yx scan and the trace ideal ladder find the same radical."""
        E = ALL_ALGEBRAS[name]()
        J = invertibility_radical(E).reshape(-1, E.dim)
        self.assertTrue(np.array_equal(J, trace_ladder_radical(E).reshape(-1, E.dim)))
        self.assertTrue(np.array_equal(J, jacobson_radical(E).reshape(-1, E.dim)))

    def test_radical_elements_are_quasi_regular(self):
        """1 - yx is a unit for x in J and every y; the unit itself fails at y = 1."""
        E = upper_triangular_algebra(3, 2)
        everything = E.elements(0, E.size)
        for x in jacobson_radical(E):
            self.assertTrue(quasi_regular(E, x, everything))
        self.assertFalse(quasi_regular(E, E.unit, E.unit[None, :]))

    def test_trace_ladder_beyond_budget(self):
        """A budget too small for the 1 - yx scan falls back to the trace ideal."""
        E = truncated_polynomial_algebra(3, 2)
        budgets = Budgets(enumeration=8)
        with self.assertRaises(BudgetExceededError):
            invertibility_radical(E, budgets)
        self.assertEqual(len(jacobson_radical(E, budgets)), 1)

    def test_large_radical(self):
        """M_2(F_3[t]/(t^2)) has the radical M_2(t F_3)."""
        E = LARGE_ALGEBRAS["M2_F3_dual_numbers"]()
        self.assertEqual(E.size, 3**8)
        self.assertEqual(len(jacobson_radical(E)), 4)

    def test_quotient(self):
        """T_2(F_3) modulo its radical is two-dimensional."""
        reduction = reduce_mod_radical(upper_triangular_algebra(3, 2))
        self.assertEqual(reduction.quotient_dim, 2)
        self.assertEqual(reduction.quotient.dim, 2)

    @parameterized.expand(
        [
            ("M2_F3", SIMPLE, ORTHOGONAL, 2),
            ("F9_frobenius", SIMPLE, UNITARY, 1),
            ("F5_swap", SWAP, EXCHANGE, 1),
        ]
    )
    def test_single_component(self, name, kind, involution, degree):
        """Type of the only component."""
        (component,) = split_semisimple(ALGEBRAS[name]())
        self.assertEqual(component.kind, kind)
        self.assertEqual(component.involution, involution)
        self.assertEqual(component.degree, degree)

    def test_product_has_two_components(self):
        """The regular endomorphisms of C2 split into trivial and sign parts."""
        X = permutation_form(regular_gset(catalog_group("C2")), make_field(5))
        self.assertEqual(len(split_semisimple(endomorphism_algebra(X))), 2)

    def test_direct_product(self):
        """F_5 x F_5 splits into two orthogonal components; mixed characteristics are rejected."""
        components = split_semisimple(ALGEBRAS["F5xF5"]())
        self.assertEqual([c.involution for c in components], [ORTHOGONAL, ORTHOGONAL])
        with self.assertRaises(SpecError):
            direct_product(field_algebra(3), field_algebra(5))

    def test_radical_rejected(self):
        """Splitting needs a semisimple algebra."""
        with self.assertRaises(SpecError):
            split_semisimple(truncated_polynomial_algebra(3, 2))


class TestOracle(unittest.TestCase):
    """Exhaustive orbits against the structural classification, up to 3^8 elements."""

    @parameterized.expand([(name, eps) for name in ALL_ALGEBRAS for eps in (1, -1)])
    def test_partitions_agree(self, name, epsilon):
        """Exhaustive class ids and structural labels induce the same partition of E^eps."""
        E = ALL_ALGEBRAS[name]()
        exhaustive = class_set_exhaustive(E, epsilon)
        structural = classify_classes_structural(E, epsilon)
        pairs = {
            (exhaustive.class_of(z), classify_element(E, epsilon, z))
            for z in hermitian_units(E, epsilon)
        }
        self.assertEqual(len(pairs), len(exhaustive))
        self.assertEqual(len({label for _, label in pairs}), len(exhaustive))
        self.assertEqual(len(structural), len(exhaustive))
        self.assertEqual(
            sorted(exhaustive.class_of(z) for z in structural.classes), list(range(len(exhaustive)))
        )

    @parameterized.expand(
        [
            (left, right, eps)
            for left, right in [
                ("F5", "F5"),
                ("M2_F3", "F3_dual_numbers"),
                ("T2_F3", "M2_F3"),
                ("F9_frobenius", "M2_F3"),
            ]
            for eps in (1, -1)
        ]
    )
    def test_product_law(self, left, right, epsilon):
        """H^eps(A x B) has |H^eps(A)| |H^eps(B)| classes."""
        A, B = ALGEBRAS[left](), ALGEBRAS[right]()
        product = direct_product(A, B)
        expected = len(class_set_exhaustive(A, epsilon)) * len(class_set_exhaustive(B, epsilon))
        self.assertEqual(len(class_set_exhaustive(product, epsilon)), expected)
        self.assertEqual(len(classify_classes_structural(product, epsilon)), expected)

    @parameterized.expand(
        [
            (name, eps)
            for name in ["F3_dual_numbers", "T2_F3", "F5_cubic", "M2_F3_dual_numbers"]
            for eps in (1, -1)
        ]
    )
    def test_radical_bijection(self, name, epsilon):
        """Classes of E and of E/J correspond, with (1 + b) chains inside each fibre."""
        if name == "F5_cubic":
            E = truncated_polynomial_algebra(5, 3)
        else:
            E = ALL_ALGEBRAS[name]()
        reduction = reduce_mod_radical(E)
        upstairs = class_set_exhaustive(E, epsilon)
        downstairs = class_set_exhaustive(reduction.quotient, epsilon)
        units = hermitian_units(E, epsilon)
        pairs = {(upstairs.class_of(z), downstairs.class_of(reduction.project(z))) for z in units}
        self.assertEqual(len(pairs), len(upstairs))
        self.assertEqual(len(pairs), len(downstairs))
        for z in upstairs.classes:
            fibre = units[np.all(reduction.project(units) == reduction.project(z), axis=-1)]
            for w in fibre:
                e = reduction.radical_chain(z, w, epsilon)
                self.assertIsNotNone(e)
                self.assertTrue(np.array_equal(E.act(e, z), w))
