"""Tests for groups, subgroup classes and G-sets."""

import unittest

from parameterized import parameterized

from gtrace.catalog import catalog_group, resolve_group, resolve_subgroup
from gtrace.config import Budgets
from gtrace.errors import BudgetExceededError, SpecError
from gtrace.groups.finite_group import build_group, parse_group_description
from gtrace.groups.gset import coset_action, regular_gset, trivial_gset
from gtrace.groups.subgroups import is_solvable, subgroup_classes, sylow2, sylow_subgroup


class TestBuildGroup(unittest.TestCase):
    """Group construction from descriptions."""

    @parameterized.expand(
        [
            ("C1", 1),
            ("C2", 2),
            ("C4", 4),
            ("V4", 4),
            ("S3", 6),
            ("D4", 8),
            ("Q8", 8),
            ("D5", 10),
            ("A4", 12),
            ("D6", 12),
            ("S4", 24),
            ("A5", 60),
        ]
    )
    def test_catalog_orders(self, name, order):
        """Catalog groups have the expected orders."""
        self.assertEqual(catalog_group(name).order, order)

    def test_generators_and_named_agree(self):
        """S3 from generators has the same table as the named S3."""
        self.assertEqual(build_group("gens: (1 2); (1 2 3)"), build_group("named: S 3"))

    def test_table_description(self):
        """An explicit table builds C2."""
        G = build_group("table:\n0 1\n1 0")
        self.assertEqual(G.order, 2)
        self.assertTrue(G.is_abelian)

    def test_non_associative_table_rejected(self):
        """A Latin square with identity that is not associative is rejected."""
        table = "table:\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0"
        with self.assertRaises(SpecError):
            build_group(table)

    def test_unknown_key_reports_line(self):
        """Parse errors carry the line number."""
        with self.assertRaises(SpecError) as ctx:
            parse_group_description("# comment\ngroup\nfoo: bar")
        self.assertEqual(ctx.exception.line, 3)

    def test_group_order_budget(self):
        """Closing generators beyond max_group_order raises."""
        with self.assertRaises(BudgetExceededError):
            build_group("named: S 5", Budgets(max_group_order=100))

    @parameterized.expand([("C4", 4), ("S3", 3), ("A4", 3), ("Q8", 4)])
    def test_max_element_order(self, name, expected):
        """Largest element order."""
        G = catalog_group(name)
        self.assertEqual(max(G.element_order(a) for a in range(G.order)), expected)


class TestSubgroups(unittest.TestCase):
    """Subgroup classes, Sylow subgroups and solvability."""

    @parameterized.expand(
        [
            ("C1", 1, 1),
            ("C4", 3, 3),
            ("V4", 5, 5),
            ("S3", 4, 6),
            ("D4", 8, 10),
            ("Q8", 6, 6),
            ("A4", 5, 10),
            ("S4", 11, 30),
            ("A5", 9, 59),
        ]
    )
    def test_class_counts(self, name, classes, subgroups):
        """Number of conjugacy classes of subgroups and of subgroups."""
        table = subgroup_classes(catalog_group(name))
        self.assertEqual(table.h, classes)
        self.assertEqual(table.subgroup_count, subgroups)

    def test_class_order(self):
        """Class 0 is trivial and the last class is the whole group."""
        G = catalog_group("S4")
        table = subgroup_classes(G)
        self.assertEqual(table[0].order, 1)
        self.assertEqual(table[table.h - 1].order, G.order)
        orders = [cls.order for cls in table.classes]
        self.assertEqual(orders, sorted(orders))

    @parameterized.expand(
        [("S3", 2, 2), ("S3", 3, 3), ("A4", 2, 4), ("S4", 2, 8), ("A5", 5, 5), ("C5", 2, 1)]
    )
    def test_sylow_orders(self, name, prime, order):
        """Sylow subgroups have the full prime-power order."""
        self.assertEqual(sylow_subgroup(catalog_group(name), prime).order, order)

    def test_sylow2_is_a_class_representative(self):
        """sylow2 picks the first class of subgroups of order 8 in S4."""
        G = catalog_group("S4")
        S = sylow2(G)
        self.assertEqual(S.order, 8)
        self.assertEqual(S, sylow_subgroup(G, 2))

    @parameterized.expand([("S3", True), ("S4", True), ("Q8", True), ("A4", True), ("A5", False)])
    def test_solvable(self, name, expected):
        """A5 is the only non-solvable catalog group."""
        self.assertEqual(is_solvable(catalog_group(name)), expected)

    def test_as_group_keeps_elements(self):
        """The Sylow 2-subgroup of S4 realised on its own is D4."""
        S = sylow_subgroup(catalog_group("S4"), 2)
        self.assertEqual(subgroup_classes(S.as_group).h, subgroup_classes(catalog_group("D4")).h)

    def test_subgroup_budget(self):
        """Subgroup enumeration respects max_subgroup_order."""
        with self.assertRaises(BudgetExceededError):
            subgroup_classes(catalog_group("A5"), Budgets(max_subgroup_order=24))

    @parameterized.expand(
        [("whole", 6), ("trivial", 1), ("sylow3", 3), ("class:1", 2), ("elements: 0", 1)]
    )
    def test_resolve_subgroup(self, ref, order):
        """Subgroup references resolve inside S3."""
        self.assertEqual(resolve_subgroup(resolve_group("S3"), ref).order, order)

    def test_resolve_subgroup_rejects_non_subgroup(self):
        """A subset that is not closed is rejected."""
        G = resolve_group("S3")
        a, b = [x for x in range(G.order) if G.element_order(x) == 2][:2]
        with self.assertRaises(SpecError):
            resolve_subgroup(G, f"elements: {a} {b}")


class TestGSet(unittest.TestCase):
    """Finite G-sets."""

    def test_coset_action(self):
        """S3/C2 has three points, one orbit and one fixed point of C2."""
        G = resolve_group("S3")
        H = sylow_subgroup(G, 2)
        X = coset_action(G, H)
        self.assertEqual(X.size, 3)
        self.assertEqual(len(X.orbits()), 1)
        self.assertEqual(X.fixed_points(H), 1)
        self.assertEqual(X.stabilizer(0).order, 2)

    def test_regular_and_trivial(self):
        """Regular G-set is free; trivial G-set is fixed by everything."""
        G = resolve_group("A4")
        self.assertEqual(regular_gset(G).fixed_points([0, 1]), 0)
        self.assertEqual(trivial_gset(G, 3).fixed_points(range(G.order)), 3)

    def test_product_and_union(self):
        """Sizes add under disjoint union and multiply under product."""
        G = resolve_group("S3")
        X = coset_action(G, sylow_subgroup(G, 2))
        Y = regular_gset(G)
        self.assertEqual(X.disjoint_union(Y).size, 9)
        self.assertEqual(X.product(X).size, 9)
        self.assertEqual(len(X.product(X).orbits()), 2)

    def test_restrict_to(self):
        """G/C3 restricted to C3 splits into fixed points."""
        G = resolve_group("S3")
        C3 = sylow_subgroup(G, 3)
        X = coset_action(G, C3).restrict_to(C3)
        self.assertEqual(len(X.orbits()), 2)
