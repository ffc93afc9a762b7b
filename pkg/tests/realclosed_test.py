"""Tests for the exact forms over a real closed field."""

import unittest

import numpy as np
from parameterized import parameterized

from gtrace.errors import InvariantError, SpecError
from gtrace.realclosed.cases import (
    CASES,
    check_division,
    classify_case,
    hyperbolic_exact,
    is_isometric_exact,
    make_form,
    n_fold_exact,
    random_congruence,
    random_form,
    witt_class_case,
    witt_group_of_case,
)
from gtrace.realclosed.scalars import I, J, format_scalar, parse_scalar, scalar


class TestClassify(unittest.TestCase):
    """Complete invariants per case."""

    def test_real_signature(self):
        """diag(1, -1, 1) has signature (2, 1)."""
        inv = classify_case(make_form("real_symmetric", [[1, 0, 0], [0, -1, 0], [0, 0, 1]]))
        self.assertEqual(inv.values, (2, 1))
        self.assertEqual(inv.witt, 1)

    def test_hermitian_plane(self):
        """[[0, i], [-i, 0]] is a hyperbolic hermitian plane."""
        f = make_form("complex_hermitian", [[0, I], [scalar(0, -1), 0]])
        self.assertEqual(classify_case(f).values, (1, 1))
        self.assertEqual(witt_class_case(f), 0)

    @parameterized.expand(
        [
            ("complex_skew_hermitian", I, (1, 0)),
            ("quaternion_orthogonal_skew_hermitian", I, (1, 0)),
            ("quaternion_hermitian", scalar(-2), (0, 1)),
        ]
    )
    def test_one_dimensional_signatures(self, case, entry, values):
        """Signatures of one-dimensional forms; skew cases are read through i^-1."""
        self.assertEqual(classify_case(make_form(case, [[entry]])).values, values)

    @parameterized.expand(
        [
            ("complex_symmetric", I),
            ("quaternion_skew_hermitian", I),
            ("quaternion_orthogonal_hermitian", J),
        ]
    )
    def test_rank_cases(self, case, entry):
        """Rank one has Witt class 1, rank two has class 0."""
        f = make_form(case, [[entry]])
        self.assertEqual(witt_class_case(f), 1)
        self.assertEqual(witt_class_case(n_fold_exact(f, 2)), 0)

    def test_alternating(self):
        """Alternating forms have class 0; odd rank is impossible."""
        self.assertEqual(witt_class_case(make_form("real_alternating", [[0, 1], [-1, 0]])), 0)
        with self.assertRaises(InvariantError):
            make_form("real_alternating", [[1]])

    def test_wrong_symmetry(self):
        """i is not hermitian for complex conjugation."""
        with self.assertRaises(InvariantError):
            make_form("complex_hermitian", [[I]])

    def test_outside_ring(self):
        """j is not in k(i)."""
        with self.assertRaises(SpecError):
            make_form("complex_symmetric", [[J]])

    def test_unknown_case(self):
        """Case names are checked."""
        with self.assertRaises(SpecError):
            make_form("octonion_hermitian", [[1]])

    @parameterized.expand(list(CASES))
    def test_hyperbolic_plane_is_zero(self, case):
        """The hyperbolic plane has class 0 in every case."""
        self.assertEqual(witt_class_case(hyperbolic_exact(case)), 0)


class TestIsometry(unittest.TestCase):
    """Isometry and division by n."""

    def test_congruent_forms(self):
        """A random congruence does not change the isometry class."""
        rng = np.random.default_rng(7)
        f = random_form("quaternion_hermitian", 2, rng)
        self.assertTrue(is_isometric_exact(f, random_congruence(f, rng)))

    def test_cases_must_match(self):
        """Forms of different cases are not compared."""
        with self.assertRaises(SpecError):
            is_isometric_exact(
                make_form("real_symmetric", [[1]]), make_form("complex_symmetric", [[1]])
            )

    def test_division(self):
        """2<1> = 2<2> and <1> = <2>, while 2<1> and 2<-1> differ."""
        one, two, minus = (make_form("real_symmetric", [[x]]) for x in (1, 2, -1))
        self.assertTrue(check_division(one, two, 2))
        self.assertIsNone(check_division(one, minus, 2))


class TestWittGroups(unittest.TestCase):
    """The Witt group of each case, inferred from seeded samples."""

    @parameterized.expand(
        [
            ("real_symmetric", "Z"),
            ("real_alternating", "0"),
            ("complex_symmetric", "Z/2"),
            ("complex_alternating", "0"),
            ("complex_hermitian", "Z"),
            ("complex_skew_hermitian", "Z"),
            ("quaternion_hermitian", "Z"),
            ("quaternion_skew_hermitian", "Z/2"),
            ("quaternion_orthogonal_hermitian", "Z/2"),
            ("quaternion_orthogonal_skew_hermitian", "Z"),
        ]
    )
    def test_witt_group(self, case, expected):
        """Z, Z/2 or 0."""
        index = list(CASES).index(case)
        self.assertEqual(witt_group_of_case(case, np.random.default_rng([42, index])), expected)


class TestScalars(unittest.TestCase):
    """Text form of exact scalars."""

    @parameterized.expand([("1/2", "real"), ("(1,-2)", "complex"), ("(0,1,1/3,-1)", "quaternion")])
    def test_round_trip(self, text, ring):
        """format(parse(text)) = text."""
        self.assertEqual(format_scalar(parse_scalar(text, ring), ring), text)

    @parameterized.expand([("(1,2)", "real"), ("x", "real"), ("(1,2,3,4,5)", "quaternion")])
    def test_rejected(self, text, ring):
        """Malformed or out-of-ring scalars."""
        with self.assertRaises(SpecError):
            parse_scalar(text, ring)
