"""Tests for Burnside rings, induction and the projection-formula identities."""

import unittest

from parameterized import parameterized

from gtrace.burnside.induction import induce, induction_pair, restrict
from gtrace.burnside.lattice import (
    hermite_basis,
    integer_kernel,
    invariant_factors,
    lattice_rank,
    same_lattice,
    smith_diagonal,
)
from gtrace.burnside.projection import projection_suite
from gtrace.burnside.ring import burnside_ring, format_int_poly
from gtrace.catalog import catalog_group
from gtrace.errors import SpecError
from gtrace.groups.gset import coset_action, regular_gset
from gtrace.groups.subgroups import sylow_subgroup


class TestMarks(unittest.TestCase):
    """Tables of marks."""

    def test_s3_table(self):
        """The table of marks of S3, classes 1 < C2 < C3 < S3."""
        ring = burnside_ring(catalog_group("S3"))
        self.assertEqual(
            ring.marks,
            [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]],
        )

    def test_frame_layout(self):
        """Rows are subgroup classes, columns basis elements."""
        frame = burnside_ring(catalog_group("S3")).mark_frame()
        self.assertEqual(frame.shape, (4, 4))
        self.assertEqual(list(frame.index)[0], "H0[1]")
        self.assertEqual(list(frame.columns)[-1], "b_G/H3[6]")

    @parameterized.expand([("C4", 3), ("V4", 5), ("D4", 8), ("A4", 5), ("S4", 11), ("A5", 9)])
    def test_rank(self, name, h):
        """Rank of Burn(G) is the number of subgroup classes."""
        self.assertEqual(burnside_ring(catalog_group(name)).h, h)


class TestRingArithmetic(unittest.TestCase):
    """Products, ghost maps and the decomposition of G-sets."""

    def setUp(self):
        """Burn(S3)."""
        self.G = catalog_group("S3")
        self.ring = burnside_ring(self.G)

    def test_product_matches_gset_product(self):
        """[X][Y] = [X x Y]."""
        X = coset_action(self.G, sylow_subgroup(self.G, 2))
        x = self.ring.decompose_gset(X)
        self.assertEqual(x * x, self.ring.decompose_gset(X.product(X)))

    def test_regular_decomposition(self):
        """The regular G-set is the basis element of the trivial subgroup."""
        self.assertEqual(self.ring.decompose_gset(regular_gset(self.G)), self.ring.basis(0))

    def test_one_is_unit(self):
        """1 x = x."""
        x = self.ring.element([1, -2, 0, 3])
        self.assertEqual(self.ring.one * x, x)

    def test_ghost_is_multiplicative(self):
        """Marks of a product are products of marks."""
        x = self.ring.element([1, 1, 0, 0])
        y = self.ring.element([0, 2, 1, -1])
        self.assertEqual((x * y).marks, tuple(a * b for a, b in zip(x.marks, y.marks)))

    def test_pullback(self):
        """Integral ghost vectors pull back; others do not."""
        self.assertEqual(self.ring.pullback([6, 0, 0, 0]), self.ring.basis(0))
        self.assertIsNone(self.ring.pullback([1, 0, 0, 0]))

    def test_different_groups_rejected(self):
        """Elements of different rings do not add."""
        other = burnside_ring(catalog_group("C2")).one
        with self.assertRaises(SpecError):
            self.ring.one + other


class TestSpectral(unittest.TestCase):
    """Characteristic and division polynomials."""

    def test_division_polynomial_of_restricted_cosets(self):
        """Res to C2 of S3/C2 has ghost (3, 1), F = 4 - t and n = 3."""
        G = catalog_group("S3")
        S = sylow_subgroup(G, 2)
        x = burnside_ring(G).decompose_gset(coset_action(G, S))
        q = restrict(S, x)
        self.assertEqual(q.marks, (3, 1))
        data = q.ring.division_polynomial(q, prime=2, gset_size=3)
        self.assertEqual(data.to_dict(), {"F": "4 - t", "F_coeffs": [4, -1], "n": 3})

    def test_char_poly(self):
        """Characteristic polynomial of G/C2 in Burn(S3)."""
        G = catalog_group("S3")
        ring = burnside_ring(G)
        data = ring.spectral(ring.basis(1))
        self.assertEqual(data.ghost, (3, 1, 0, 0))
        self.assertEqual(data.norm, 0)
        self.assertEqual(data.char_poly, (0, 0, 3, -4, 1))

    @parameterized.expand(
        [
            ((4, -1), "4 - t"),
            ((3, -4, 1), "3 - 4*t + t^2"),
            ((0,), "0"),
            ((0, 0, -2), "-2*t^2"),
        ]
    )
    def test_format_int_poly(self, coeffs, expected):
        """Constant-first rendering."""
        self.assertEqual(format_int_poly(coeffs), expected)


class TestInduction(unittest.TestCase):
    """Induction and restriction between Burn(S) and Burn(G)."""

    def test_induce_one_is_cosets(self):
        """i(1) = [G/S]."""
        G = catalog_group("S3")
        S = sylow_subgroup(G, 2)
        ring_S = burnside_ring(S.as_group)
        self.assertEqual(induce(S, ring_S.one), burnside_ring(G).decompose_gset(coset_action(G, S)))

    def test_restrict_one_is_one(self):
        """r(1) = 1."""
        G = catalog_group("A4")
        S = sylow_subgroup(G, 2)
        self.assertEqual(restrict(S, burnside_ring(G).one), burnside_ring(S.as_group).one)

    def test_matrices_shape(self):
        """i is h_G x h_S and r is h_S x h_G."""
        G = catalog_group("S4")
        pair = induction_pair(sylow_subgroup(G, 2))
        self.assertEqual(len(pair.i_matrix), 11)
        self.assertEqual(len(pair.i_matrix[0]), pair.ring_S.h)
        self.assertEqual(len(pair.r_matrix), pair.ring_S.h)

    def test_wrong_ring_rejected(self):
        """Restriction expects an element of Burn(G)."""
        G = catalog_group("S3")
        S = sylow_subgroup(G, 2)
        with self.assertRaises(SpecError):
            restrict(S, burnside_ring(S.as_group).one)


class TestProjectionSuite(unittest.TestCase):
    """The identities over the catalog."""

    @parameterized.expand(["C2", "S3", "V4", "D4", "A4", "D5", "S4"])
    def test_sylow2_passes(self, name):
        """Every identity holds for S a Sylow 2-subgroup."""
        G = catalog_group(name)
        report = projection_suite(G, sylow_subgroup(G, 2), 2)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.extra["n"] % 2, 1)

    def test_s3_constants(self):
        """For S3 and C2: Q = [G/C2], n = 3 and F = 4 - t."""
        G = catalog_group("S3")
        report = projection_suite(G, sylow_subgroup(G, 2), 2)
        self.assertEqual(report.extra["n"], 3)
        self.assertEqual(report.extra["F"], "4 - t")
        self.assertEqual(report.extra["q_ghost"], [3, 1])

    def test_foreign_subgroup_rejected(self):
        """S must be a subgroup of G."""
        G = catalog_group("S3")
        with self.assertRaises(SpecError):
            projection_suite(G, sylow_subgroup(catalog_group("S4"), 2))


class TestConnectivity(unittest.TestCase):
    """Spec(Burn(G)) is connected exactly for solvable G."""

    @parameterized.expand(
        [("C1", True), ("C4", True), ("S3", True), ("A4", True), ("S4", True), ("A5", False)]
    )
    def test_connected(self, name, expected):
        """Connectivity against solvability."""
        result = burnside_ring(catalog_group(name)).spec_connected()
        self.assertEqual(result.connected, expected)
        if expected:
            self.assertEqual(result.idempotent_count, 2)
        else:
            e = result.idempotent
            self.assertEqual(e * e, e)


class TestLattice(unittest.TestCase):
    """Integer lattice helpers."""

    def test_invariant_factors(self):
        """diag(2, 3) has invariant factors 1, 6."""
        self.assertEqual(invariant_factors([[2, 0], [0, 3]]), [1, 6])

    def test_kernel(self):
        """Kernel of (1 1) is spanned by (1, -1)."""
        K = integer_kernel([[1, 1]])
        self.assertEqual(K.shape, (2, 1))
        self.assertEqual(abs(int(K[0, 0])), 1)
        self.assertEqual(int(K[0, 0]) + int(K[1, 0]), 0)

    def test_rank_and_same_lattice(self):
        """Two bases of 2Z + Z span the same lattice."""
        self.assertEqual(lattice_rank([[2, 4], [0, 1]]), 2)
        self.assertTrue(same_lattice([[2, 0], [0, 1]], [[2, 2], [0, 1]]))
        self.assertFalse(same_lattice([[2, 0], [0, 1]], [[1, 0], [0, 1]]))

    def test_kernel_is_saturated(self):
        """Ker (2 4) is spanned by (2, -1), not by a multiple."""
        K = integer_kernel([[2, 4]])
        self.assertEqual(K.shape, (2, 1))
        self.assertTrue(same_lattice(K, [[2], [-1]]))
        self.assertFalse(same_lattice(K, [[4], [-2]]))

    def test_kernel_with_more_rows_than_columns(self):
        """Repeated rows do not change the kernel."""
        self.assertTrue(same_lattice(integer_kernel([[1, 1], [2, 2], [3, 3]]), [[1], [-1]]))
        self.assertEqual(integer_kernel([[1, 0], [0, 1], [1, 1]]).shape, (2, 0))

    def test_normal_forms(self):
        """Smith diagonal with zeros; the Hermite basis drops zero columns."""
        self.assertEqual(smith_diagonal([[2, 0], [0, 3], [0, 0]]), [1, 6])
        self.assertEqual(smith_diagonal([[2, 4], [1, 2]]), [1, 0])
        self.assertEqual(hermite_basis([[0, 2], [0, 0]]).shape, (2, 1))
        self.assertEqual(hermite_basis([[0, 0]]).shape, (1, 0))
