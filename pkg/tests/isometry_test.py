"""Tests for the isometry backends."""

import itertools
import unittest

import numpy as np
from parameterized import parameterized

from gtrace.catalog import catalog_group
from gtrace.config import Budgets
from gtrace.errors import BudgetExceededError, SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import make_field
from gtrace.forms.constructions import diagonal_form, hyperbolic, permutation_form
from gtrace.forms.isometry import (
    BOTH,
    invert_witness,
    is_isometric,
    is_isometry,
    isometry_exhaustive,
)
from gtrace.forms.space import ModuleRep, make_space
from gtrace.groups.finite_group import trivial_group
from gtrace.groups.gset import regular_gset
from gtrace.lab.generator import PAIR, InstanceGenerator


def _c2_split(gram):
    """Trivial plus sign module of C2 over F_5 with a diagonal Gram matrix."""
    rep = np.array([[[1, 0], [0, 1]], [[1, 0], [0, 4]]])
    return make_space(make_field(5), catalog_group("C2"), 1, gram, rep)


class TestPlainForms(unittest.TestCase):
    """Forms without group action."""

    def setUp(self):
        """F_5."""
        self.F = make_field(5)

    @parameterized.expand(["exhaustive", "structural", "both", "auto"])
    def test_unit_and_nonsquare_differ(self, backend):
        """<1> and <2> are not isometric over F_5."""
        verdict = is_isometric(diagonal_form(self.F, [1]), diagonal_form(self.F, [2]), backend)
        self.assertFalse(verdict.isometric)
        self.assertIsNone(verdict.witness)

    @parameterized.expand(["exhaustive", "structural", "both"])
    def test_doubles_agree(self, backend):
        """<1, 1> and <2, 2> are isometric, with a verified witness."""
        X, Y = diagonal_form(self.F, [1, 1]), diagonal_form(self.F, [2, 2])
        verdict = is_isometric(X, Y, backend)
        self.assertTrue(verdict.isometric)
        self.assertTrue(is_isometry(X, Y, verdict.witness))

    def test_inverse_witness(self):
        """The inverse of an isometry X -> Y is an isometry Y -> X."""
        X, Y = diagonal_form(self.F, [1, 1]), diagonal_form(self.F, [2, 2])
        phi = is_isometric(X, Y, "exhaustive").witness
        self.assertTrue(is_isometry(Y, X, invert_witness(self.F, phi)))

    def test_dimension_mismatch(self):
        """Different dimensions are never isometric."""
        X, Y = diagonal_form(self.F, [1]), diagonal_form(self.F, [1, 1])
        verdict = is_isometric(X, Y, "exhaustive")
        self.assertFalse(verdict.isometric)

    def test_unknown_backend(self):
        """Only the listed backends are accepted."""
        with self.assertRaises(SpecError):
            is_isometric(diagonal_form(self.F, [1]), diagonal_form(self.F, [1]), "guess")

    def test_mixed_epsilon(self):
        """Symmetric and alternating spaces are not compared."""
        H = hyperbolic(ModuleRep.trivial(self.F, trivial_group()), -1)
        with self.assertRaises(SpecError):
            is_isometric(diagonal_form(self.F, [1, 1]), H)

    def test_exhaustive_budget(self):
        """Enumerating 5^4 intertwiners exceeds an enumeration budget of 10."""
        X, Y = diagonal_form(self.F, [1, 1]), diagonal_form(self.F, [2, 2])
        with self.assertRaises(BudgetExceededError):
            isometry_exhaustive(X, Y, Budgets(enumeration=10))


class TestEquivariantForms(unittest.TestCase):
    """Spaces with a group action."""

    def test_regular_c2(self):
        """The permutation form of C2 is diag(2, 2) on trivial plus sign, not diag(1, 1)."""
        regular = permutation_form(regular_gset(catalog_group("C2")), make_field(5))
        self.assertTrue(is_isometric(_c2_split([[2, 0], [0, 2]]), regular, "both").isometric)
        self.assertFalse(is_isometric(_c2_split([[1, 0], [0, 1]]), regular, "both").isometric)

    def test_modules_must_match(self):
        """A trivial module is not the regular module."""
        F = make_field(3)
        regular = permutation_form(regular_gset(catalog_group("C2")), F)
        trivial = diagonal_form(F, [1, 1], catalog_group("C2"))
        verdict = is_isometric(trivial, regular, "structural")
        self.assertFalse(verdict.isometric)
        self.assertEqual(verdict.rung, "module")

    def test_witness_intertwines(self):
        """Witnesses commute with the action."""
        regular = permutation_form(regular_gset(catalog_group("C2")), make_field(5))
        X = _c2_split([[2, 0], [0, 2]])
        verdict = is_isometric(X, regular, "structural")
        self.assertIsNotNone(verdict.witness)
        self.assertTrue(is_isometry(X, regular, verdict.witness))


def _matrices(F, d):
    for entries in itertools.product(range(F.q), repeat=d * d):
        yield np.array(entries, dtype=np.int64).reshape(d, d)


def _modules(F, G, d):
    """Every d-dimensional module of a cyclic group, one per generator image."""
    if G.order == 1:
        return [ModuleRep.trivial(F, G, d)]
    identity = np.eye(d, dtype=np.int64)
    out = []
    for A in _matrices(F, d):
        if linalg.det(F, A) == 0:
            continue
        power = identity
        for _ in range(G.order):
            power = F.matmul(power, A)
        if np.array_equal(power, identity):
            out.append(ModuleRep.from_generators(F, G, {G.generators[0]: A}))
    return out


def all_spaces(F, G, d, epsilon):
    """Every nonsingular invariant epsilon-form on every d-dimensional module."""
    for M in _modules(F, G, d):
        for B in _matrices(F, d):
            if not np.array_equal(B.T, epsilon * B % F.q) or linalg.det(F, B) == 0:
                continue
            if all(np.array_equal(F.matmul(F.matmul(R.T, B), R), B) for R in M.rep):
                yield make_space(F, G, epsilon, B, M.rep)


class TestOracleAgreement(unittest.TestCase):
    """The exhaustive and structural backends on complete and seeded families."""

    @parameterized.expand(
        [
            ("C1", 1, 1, 2),
            ("C1", 2, 1, 2),
            ("C1", 2, -1, 1),
            ("C2", 1, 1, 4),
            ("C2", 2, 1, None),
            ("C2", 2, -1, None),
            ("C3", 1, 1, 2),
            ("C3", 2, 1, None),
            ("C3", 2, -1, None),
        ]
    )
    def test_full_enumeration_over_f3(self, name, dim, epsilon, classes):
        """Each space over F_3 matches exactly one earlier representative or starts a class."""
        F = make_field(3)
        G = catalog_group(name)
        representatives = []
        count = 0
        for X in all_spaces(F, G, dim, epsilon):
            count += 1
            hits = [R for R in representatives if is_isometric(X, R, BOTH).isometric]
            self.assertLessEqual(len(hits), 1)
            if not hits:
                representatives.append(X)
        self.assertGreater(count, 0)
        if classes is not None:
            self.assertEqual(len(representatives), classes)

    @parameterized.expand([(42, 3, 3), (43, 5, 2)])
    def test_seeded_pairs(self, seed, p, max_dim):
        """250 generated pairs per stream; both backends agree and conjugated twins match."""
        groups = [catalog_group(name) for name in ("C2", "C3", "C4", "V4", "S3")]
        generator = InstanceGenerator(
            seed=seed, groups=groups, primes=(p,), max_dim=max_dim, epsilons=(1, -1)
        )
        isometric = 0
        for instance in generator.generate(PAIR, 250):
            X, Y = instance.spaces
            verdict = is_isometric(X, Y, BOTH)
            self.assertEqual(verdict.backend, BOTH)
            if verdict.isometric:
                isometric += 1
                self.assertTrue(is_isometry(X, Y, verdict.witness))
            elif instance.strategy == "conjugation":
                self.fail(f"conjugated twin {instance.index} was not isometric")
        self.assertGreaterEqual(isometric, 250 // 3)
