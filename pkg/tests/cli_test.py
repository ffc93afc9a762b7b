"""Tests for the command line."""

import json
import tempfile
import unittest
from pathlib import Path

from click.testing import CliRunner
from parameterized import parameterized

from gtrace.run import main
from gtrace.utils.format_utils import load_space

RESOURCES = Path(__file__).parent / "resources"

SMALL = [
    "--param",
    "count=2",
    "--param",
    "max_dim=1",
    "--param",
    "groups=[C2]",
    "--param",
    "epsilons=[1]",
]
UNIT = RESOURCES / "unit.space"
NONSQUARE = RESOURCES / "nonsquare.space"


class TestCli(unittest.TestCase):
    """Subcommands through click's test runner."""

    def setUp(self):
        """Runner."""
        self.runner = CliRunner()

    def invoke(self, *args):
        """Invoke the CLI and return the result."""
        return self.runner.invoke(main, [str(a) for a in args])

    def report(self, *args):
        """Invoke the CLI with --out and return the JSON it wrote; the exit status must be 0."""
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            result = self.invoke("--out", out, *args)
            self.assertEqual(result.exit_code, 0, result.output)
            return json.loads(out.read_text())

    def test_help_lists_command_groups(self):
        """--help describes every command group."""
        result = self.invoke("--help")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("Burnside rings", result.output)
        for name in ["group", "burnside", "forms", "galois", "hermitian", "realclosed", "suite"]:
            self.assertIn(f"  {name} ", result.output)

    def test_group_info(self):
        """JSON report of a catalog group."""
        info = self.report("group", "info", "S3")
        self.assertEqual(info["order"], 6)
        self.assertTrue(info["solvable"])
        self.assertEqual(info["subgroup_classes"], 4)

    def test_table_format(self):
        """--format table renders one row per subgroup class."""
        result = self.invoke("--format", "table", "group", "subgroups", "S3")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(len(result.output.strip().splitlines()), 1 + 4)

    @parameterized.expand(
        [
            (["group", "info", "named: X 3"],),
            (["forms", "build", "-f", "4", "-d", "1"],),
            (["--budget", "1", "forms", "isometric", UNIT, NONSQUARE, "-b", "exhaustive"],),
            (["forms", "witt", RESOURCES / "missing.space"],),
        ]
    )
    def test_input_errors_exit_2(self, args):
        """Bad input, exceeded budgets and missing files."""
        self.assertEqual(self.invoke(*args).exit_code, 2)

    def test_isometric(self):
        """<1, 1> and <2, 2> are isometric with a hashed witness."""
        verdict = self.report("forms", "isometric", UNIT, NONSQUARE, "-b", "both")
        self.assertTrue(verdict["isometric"])
        self.assertEqual(len(verdict["witness_hash"]), 64)

    def test_witt(self):
        """<1, 1> over F_5 is Witt trivial."""
        witt = self.report("forms", "witt", UNIT)
        self.assertEqual(witt, {"rank_parity": 0, "discriminant_class": 1})

    def test_build_writes_space_file(self):
        """--out writes a space file that reads back."""
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "x.space"
            result = self.invoke("--out", out, "forms", "build", "-f", "5", "-d", "1 2")
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertEqual(load_space(out).gram.tolist(), [[1, 0], [0, 2]])

    def test_divpoly(self):
        """Division polynomial of the cosets of a Sylow 2-subgroup of S3."""
        data = self.report("burnside", "divpoly", "-g", "S3", "--gset", "cosets:sylow2")
        self.assertEqual(data["group"], "S3")

    def test_realclosed_classify(self):
        """The hermitian plane has signature (1, 1)."""
        data = self.report("realclosed", "classify", RESOURCES / "hermitian_plane.form")
        self.assertEqual(data["values"], [1, 1])
        self.assertEqual(data["witt"], 0)

    def test_hermitian_classes(self):
        """Both methods agree on the dual numbers."""
        algebra = RESOURCES / "dual_numbers.alg"
        result = self.invoke("hermitian", "classes", algebra, "--method", "both")
        self.assertEqual(result.exit_code, 0, result.output)

    def test_suite_run(self):
        """A short stream of a check passes."""
        report = self.report("--seed", 3, "suite", "run", "hyperbolic_props", *SMALL)
        self.assertEqual(report["verdict"], "pass")

    def test_negative_control(self):
        """A negative control that fails exits 0."""
        report = self.report("suite", "run", "hyperbolic_props", *SMALL, "--negative-control")
        self.assertEqual(report["verdict"], "fail")

    def test_even_division_demonstration(self):
        """div_odd with n = 2 records its expected failure and exits 0."""
        report = self.report("suite", "run", "div_odd", "--param", "n=2")
        self.assertEqual(report["verdict"], "fail")
        self.assertTrue(report["extra"]["expected_failure"])
