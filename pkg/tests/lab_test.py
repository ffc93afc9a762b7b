"""Tests for the instance generator, the property checks and the suite runner."""

import unittest

import numpy as np
from parameterized import parameterized

from gtrace.catalog import catalog_group
from gtrace.config import Budgets, SuiteConfig
from gtrace.errors import SpecError
from gtrace.fields.finite_field import make_field
from gtrace.forms.constructions import diagonal_form, hyperbolic
from gtrace.forms.space import ModuleRep, module_isomorphism
from gtrace.groups.finite_group import trivial_group
from gtrace.lab.check import corrupt
from gtrace.lab.checks import CHECKS, run_check
from gtrace.lab.generator import MODULE_PAIR, PAIR, SCALAR, SPACE, TRIPLE, InstanceGenerator
from gtrace.lab.suite import run_suite, suite_passed, suite_tasks
from gtrace.report import CheckReport

BUDGETS = Budgets(enumeration=6561)
SMALL = {"count": 3, "groups": ["C2"], "primes": [3], "max_dim": 1}


class TestInstanceGenerator(unittest.TestCase):
    """Seeded instance streams."""

    def generator(self, seed=42, **kwargs):
        """Generator over C2 and S3."""
        groups = [catalog_group("C2"), catalog_group("S3")]
        return InstanceGenerator(seed=seed, groups=groups, primes=(3, 5), budgets=BUDGETS, **kwargs)

    def test_same_seed_same_stream(self):
        """Two generators with one seed produce the same instances."""
        first = [i.to_dict() for i in self.generator().generate(PAIR, 4)]
        second = [i.to_dict() for i in self.generator().generate(PAIR, 4)]
        self.assertEqual(first, second)

    def test_instance_independent_of_position(self):
        """Instance i does not depend on the instances before it."""
        stream = list(self.generator().generate(PAIR, 3))
        self.assertEqual(self.generator().instance(PAIR, 2).to_dict(), stream[2].to_dict())

    @parameterized.expand([(SPACE, 1), (PAIR, 2), (TRIPLE, 3), (MODULE_PAIR, 2)])
    def test_kinds(self, kind, size):
        """Each kind carries its number of spaces over one group and field."""
        instance = self.generator().instance(kind, 0)
        self.assertEqual(len(instance.spaces), size)
        X = instance.spaces[0]
        for Y in instance.spaces[1:]:
            self.assertEqual(Y.group, X.group)
            self.assertEqual(Y.field, X.field)
            self.assertEqual(Y.epsilon, X.epsilon)

    def test_scalar_twin(self):
        """The scalar strategy multiplies the Gram matrix by the non-square."""
        instance = self.generator(strategies=(SCALAR,)).instance(PAIR, 0)
        X, Y = instance.spaces
        F = X.field
        self.assertEqual(instance.strategy, SCALAR)
        self.assertTrue(np.array_equal(Y.gram, (X.gram * F.nonsquare) % F.p))

    def test_module_pair_isomorphic(self):
        """A module pair is one module in two bases."""
        X, Y = self.generator().instance(MODULE_PAIR, 1).spaces
        self.assertIsNotNone(module_isomorphism(X.module, Y.module, BUDGETS))

    @parameterized.expand(
        [
            ({"primes": (2,)},),
            ({"strategies": ("guess",)},),
            ({"epsilons": (-1,), "max_dim": 1},),
            ({"max_dim": 0},),
        ]
    )
    def test_rejected_parameters(self, kwargs):
        """Even primes, unknown strategies and impossible dimensions."""
        params = {"seed": 1, "groups": [catalog_group("C2")], **kwargs}
        with self.assertRaises(SpecError):
            InstanceGenerator(**params)

    def test_unknown_kind(self):
        """Instance kinds are checked."""
        with self.assertRaises(SpecError):
            self.generator().instance("quadruple", 0)


class TestChecks(unittest.TestCase):
    """Property checks on small streams."""

    @parameterized.expand([(name,) for name in CHECKS if name != "ind_res_sylow"])
    def test_small_runs_pass(self, name):
        """Every check holds on a short stream of one-dimensional spaces."""
        report = run_check(name, SMALL, seed=7, budgets=BUDGETS)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.attempted, 3)

    def test_ind_res_sylow(self):
        """Induction from the Sylow 2-subgroup of S3."""
        params = {"count": 2, "primes": [3], "max_dim": 1}
        report = run_check("ind_res_sylow", params, seed=7, budgets=BUDGETS)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.nonvacuous + report.vacuous + report.skipped, report.attempted)

    def test_ind_res_sylow_s4(self):
        """Induction from D4 to S4; every conjugated twin is a nonvacuous instance."""
        params = {"group": "S4", "count": 6, "primes": [3, 5], "max_dim": 1}
        report = run_check("ind_res_sylow", params, seed=42, budgets=BUDGETS)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.params["subgroup"], "sylow2")
        self.assertGreaterEqual(report.nonvacuous, 2)
        self.assertEqual(report.nonvacuous + report.vacuous + report.skipped, 6)

    def test_vacuous_instances_counted(self):
        """Scalar twins of odd-dimensional spaces fail the hypothesis and are counted."""
        params = {**SMALL, "count": 6, "strategies": ["scalar"]}
        report = run_check("div_odd", params, seed=7, budgets=BUDGETS)
        self.assertTrue(report.passed, report.failures)
        self.assertEqual(report.vacuous, 6)
        self.assertEqual(report.to_dict()["vacuous"], 6)

    def test_even_division_demonstration(self):
        """n = 2 runs the pair <1>, <2> over F_5 and records the failure as expected."""
        report = run_check("div_odd", {"n": 2}, budgets=BUDGETS)
        self.assertTrue(report.extra["expected_failure"])
        self.assertEqual(report.nonvacuous, 1)
        self.assertEqual(len(report.failures), 1)
        self.assertTrue(suite_passed([report]))

    @parameterized.expand(
        [
            ("cancellation", {"bogus": 1}),
            ("div_odd", {"n": 1}),
            ("odd_extension", {"m": 2}),
            ("ind_res_sylow", {"groups": ["C2"]}),
        ]
    )
    def test_rejected_parameters(self, name, params):
        """Unknown keys and invalid values."""
        with self.assertRaises(SpecError):
            run_check(name, params)

    def test_unknown_check(self):
        """Check names are looked up in the registry."""
        with self.assertRaises(SpecError):
            run_check("associativity")

    def test_minimum_nonvacuous(self):
        """An empty stream fails a positive minimum."""
        report = run_check("cancellation", {"count": 0, "min_nonvacuous": 1})
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0]["identity"], "minimum nonvacuous count")

    def test_negative_control_fails(self):
        """With an extra summand on the second space every tested instance fails."""
        params = {**SMALL, "negative_control": True}
        report = run_check("hyperbolic_props", params, seed=7, budgets=BUDGETS)
        self.assertGreater(report.nonvacuous, 0)
        self.assertEqual(len(report.failures), report.nonvacuous)
        self.assertTrue(suite_passed([report]))

    @parameterized.expand([(1, 1), (-1, 2)])
    def test_corrupt(self, epsilon, extra):
        """<1> is added to symmetric spaces, a hyperbolic plane to alternating ones."""
        F = make_field(3)
        if epsilon == 1:
            X = diagonal_form(F, [1, 2])
        else:
            X = hyperbolic(ModuleRep.trivial(F, trivial_group()), -1)
        self.assertEqual(corrupt(X).dim, X.dim + extra)


class TestReports(unittest.TestCase):
    """Check reports and the suite verdict."""

    def test_merge(self):
        """Counts and failures add up."""
        a = CheckReport("c", attempted=2, nonvacuous=1, passes=1, runtime_ms=3)
        b = CheckReport("c", attempted=1, nonvacuous=1)
        b.record_failure("identity", {"x": 1})
        a.merge(b)
        self.assertEqual((a.attempted, a.nonvacuous, a.passes), (3, 2, 1))
        self.assertEqual(a.verdict, "fail")
        self.assertEqual(a.runtime_ms, 3)

    def test_timings_omitted_by_default(self):
        """runtime_ms appears only on request."""
        report = CheckReport("c", runtime_ms=5)
        self.assertNotIn("runtime_ms", report.to_dict())
        self.assertEqual(report.to_dict(timings=True)["runtime_ms"], 5)

    def test_suite_passed(self):
        """Failures fail the suite unless expected; negative controls must fail."""
        ok = CheckReport("a")
        bad = CheckReport("b")
        bad.record_failure("identity", None)
        expected = CheckReport("c", extra={"expected_failure": True})
        expected.record_failure("identity", None)
        control = CheckReport("d", params={"negative_control": True}, nonvacuous=1)
        self.assertTrue(suite_passed([ok, expected]))
        self.assertFalse(suite_passed([ok, bad]))
        self.assertFalse(suite_passed([control]))
        self.assertTrue(suite_passed([CheckReport("e", params={"negative_control": True})]))


class TestSuite(unittest.TestCase):
    """Task lists and suite runs."""

    def config(self, **kwargs):
        """Two seeds, one check and two catalog groups."""
        defaults = {
            "seeds": [1, 2],
            "budgets": BUDGETS,
            "catalog": ["C2", "S3"],
            "checks": [{"kind": "hyperbolic_props", **SMALL, "count": 2}],
        }
        return SuiteConfig(**{**defaults, **kwargs})

    def test_tasks(self):
        """One task per check and seed, two per catalog group."""
        tasks = suite_tasks(self.config())
        self.assertEqual(len(tasks), 2 + 2 * 2)
        self.assertEqual([t[3] for t in tasks[:2]], [1, 2])

    def test_negative_control_tasks(self):
        """The flag reaches every check task."""
        tasks = suite_tasks(self.config(), negative_control=True)
        self.assertTrue(all(t[2]["negative_control"] for t in tasks if t[0] == "check"))

    def test_burnside_switches(self):
        """Burnside identities can be switched off."""
        tasks = suite_tasks(self.config(burnside={"projection": False, "connected": False}))
        self.assertEqual(len(tasks), 2)

    def test_run(self):
        """A small suite passes and keeps task order."""
        reports = run_suite(self.config(catalog=["C2"]))
        self.assertEqual([r.check_id for r in reports][:2], ["hyperbolic_props"] * 2)
        self.assertEqual(reports[-1].check_id, "spec_connected")
        self.assertTrue(suite_passed(reports))
