"""Tests for budgets and YAML configuration."""

import tempfile
import unittest
from pathlib import Path

from gtrace.config import (
    DEFAULT_BUDGETS,
    Budgets,
    parse_budgets,
    parse_catalog,
    parse_suite_config,
)
from gtrace.errors import BudgetExceededError, SpecError


def _write(tmp: str, name: str, text: str) -> Path:
    path = Path(tmp) / name
    path.write_text(text)
    return path


class TestBudgets(unittest.TestCase):
    """Budget checks and overrides."""

    def test_check(self):
        """Values above the bound raise, values at the bound do not."""
        budgets = Budgets(max_field_size=25)
        budgets.check("max_field_size", 25)
        with self.assertRaises(BudgetExceededError) as ctx:
            budgets.check("max_field_size", 27)
        self.assertEqual((ctx.exception.bound, ctx.exception.limit), ("max_field_size", 25))

    def test_with_enumeration(self):
        """None keeps the budgets, a value replaces the enumeration bound only."""
        self.assertIs(DEFAULT_BUDGETS.with_enumeration(None), DEFAULT_BUDGETS)
        budgets = DEFAULT_BUDGETS.with_enumeration(10)
        self.assertEqual(budgets.enumeration, 10)
        self.assertEqual(budgets.max_group_order, DEFAULT_BUDGETS.max_group_order)

    def test_parse_budgets(self):
        """Unknown keys are rejected; known keys override the defaults."""
        self.assertIs(parse_budgets(None), DEFAULT_BUDGETS)
        self.assertEqual(parse_budgets({"max_table_order": "64"}).max_table_order, 64)
        with self.assertRaises(SpecError):
            parse_budgets({"max_ram": 1})


class TestSuiteConfig(unittest.TestCase):
    """suite.yaml and catalog.yaml."""

    def test_repository_suite(self):
        """The shipped suite.yaml lists every check and the whole catalog."""
        config = parse_suite_config()
        self.assertEqual(config.seeds, [42, 43, 44])
        self.assertEqual(config.budgets.enumeration, 6561)
        minimums = {
            (entry["kind"], entry.get("n"), entry.get("group")): entry["min_nonvacuous"]
            for entry in config.checks
        }
        self.assertEqual(
            minimums,
            {
                ("cancellation", None, None): 200,
                ("div_odd", 3, None): 100,
                ("div_odd", 5, None): 100,
                ("odd_extension", None, None): 100,
                ("ind_res_sylow", None, "S3"): 25,
                ("ind_res_sylow", None, "S4"): 25,
                ("hyperbolic_props", None, None): 50,
            },
        )
        for entry in config.checks:
            self.assertGreaterEqual(entry["count"], entry["min_nonvacuous"])
        self.assertEqual(set(config.catalog), set(parse_catalog()))

    def test_single_seed(self):
        """A lone seed becomes the seed list."""
        with tempfile.TemporaryDirectory() as tmp:
            config = parse_suite_config(_write(tmp, "suite.yaml", "seed: 7\n"))
        self.assertEqual(config.seeds, [7])
        self.assertEqual(config.checks, [])
        self.assertIs(config.budgets, DEFAULT_BUDGETS)

    def test_empty_file(self):
        """An empty YAML file gives the defaults."""
        with tempfile.TemporaryDirectory() as tmp:
            config = parse_suite_config(_write(tmp, "suite.yaml", ""))
        self.assertEqual(config.seed, 42)
        self.assertEqual(config.processes, 1)

    def test_catalog_entries_need_name_and_group(self):
        """Catalog entries are validated."""
        with tempfile.TemporaryDirectory() as tmp:
            path = _write(tmp, "catalog.yaml", "groups:\n  - name: C2\n")
            with self.assertRaises(SpecError):
                parse_catalog(path)

    def test_catalog_order(self):
        """The catalog keeps file order."""
        with tempfile.TemporaryDirectory() as tmp:
            text = (
                "groups:\n"
                "  - name: B\n    group: 'named: C 2'\n"
                "  - name: A\n    group: 'named: C 3'\n"
            )
            self.assertEqual(list(parse_catalog(_write(tmp, "catalog.yaml", text))), ["B", "A"])
