"""Tests for the text formats and report rendering."""

import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np
from parameterized import parameterized
from sympy import Rational

from gtrace.burnside.ring import burnside_ring
from gtrace.catalog import catalog_group, resolve_group
from gtrace.errors import InvariantError, SpecError
from gtrace.fields.finite_field import make_field
from gtrace.groups.finite_group import build_group, parse_group_description
from gtrace.hermitian.radical import jacobson_radical
from gtrace.realclosed.cases import witt_class_case
from gtrace.report import CheckReport
from gtrace.utils.format_utils import (
    format_algebra,
    format_entry,
    format_form,
    format_group,
    format_space,
    load_algebra,
    load_form,
    load_space,
    parse_algebra,
    parse_entry,
    parse_form,
    parse_space,
)
from gtrace.utils.report_utils import canonical_json, emit, render, to_plain, witness_hash

RESOURCES = Path(__file__).parent / "resources"

SPACE_HEADER = "field 5 1\nepsilon 1\ngroup C1\ndim 2\ngram\n"


class TestGroupFiles(unittest.TestCase):
    """Group files and references."""

    def test_grp_file(self):
        """A .grp file resolves under its file name."""
        G = resolve_group(str(RESOURCES / "klein.grp"))
        self.assertEqual(G.order, 4)
        self.assertEqual(G.name, "klein")
        self.assertTrue(G.is_abelian)

    def test_table_keeps_element_order(self):
        """The table written for a group rebuilds the same table."""
        G = catalog_group("S3")
        H = build_group(parse_group_description(format_group(G)))
        self.assertTrue(np.array_equal(np.asarray(H.table), np.asarray(G.table)))

    def test_missing_file(self):
        """Missing group files are input errors."""
        with self.assertRaises(SpecError):
            resolve_group(str(RESOURCES / "missing.grp"))


class TestFieldEntries(unittest.TestCase):
    """Scalars in space and algebra files."""

    def test_vector_entry(self):
        """[1,2] over F_9 is 1 + 2t, encoded 1 + 2 * 3."""
        F = make_field(3, 2)
        self.assertEqual(parse_entry(F, "[1,2]"), 7)
        self.assertEqual(format_entry(F, 7), "[1,2]")

    @parameterized.expand([("[3,0]",), ("[1]",), ("9",), ("x",)])
    def test_bad_entries(self, token):
        """Coefficients out of range, wrong lengths and non-elements."""
        with self.assertRaises(SpecError):
            parse_entry(make_field(3, 2), token)


class TestSpaceFiles(unittest.TestCase):
    """.space files."""

    def test_load(self):
        """A space file without rep blocks has the trivial action."""
        X = load_space(RESOURCES / "unit.space")
        self.assertEqual(X.dim, 2)
        self.assertEqual(X.gram.tolist(), [[1, 0], [0, 1]])
        self.assertEqual(X.group.order, 1)

    def test_rep_blocks(self):
        """Generator images are closed up to the full representation."""
        X = load_space(RESOURCES / "c2_regular.space")
        self.assertEqual(X.rep[1].tolist(), [[0, 1], [1, 0]])

    def test_written_space_reads_back(self):
        """format_space output parses to the same Gram matrix and action."""
        X = load_space(RESOURCES / "c2_regular.space")
        Y = parse_space(format_space(X))
        self.assertTrue(np.array_equal(Y.gram, X.gram))
        self.assertTrue(Y.module.same_as(X.module))

    @parameterized.expand(
        [
            ("field 5 1\nepsilon 2\n", 2),
            ("field 5 1\n\n# comment\nepsilon 1\ngroup C1\ndim 2\ngram\n1 0\n0\n", 9),
            (SPACE_HEADER + "1 0\n0 5\n", 7),
            ("field 4 1\n", 1),
            ("field 5 1\nepsilon 1\ngroup NOPE\n", 3),
        ]
    )
    def test_errors_carry_line_numbers(self, text, line):
        """Parse errors point at the offending line."""
        with self.assertRaises(SpecError) as ctx:
            parse_space(text)
        self.assertEqual(ctx.exception.line, line)

    def test_singular_gram_is_input_error(self):
        """Type errors of a parsed space are reported as input errors."""
        with self.assertRaises(SpecError):
            parse_space(SPACE_HEADER + "1 1\n1 1\n")


class TestAlgebraFiles(unittest.TestCase):
    """.alg files."""

    def test_load(self):
        """The dual numbers over F_3 have a one-dimensional radical."""
        E = load_algebra(RESOURCES / "dual_numbers.alg")
        self.assertEqual(E.name, "dual_numbers")
        self.assertEqual(len(jacobson_radical(E)), 1)

    def test_written_algebra_reads_back(self):
        """Structure constants survive a write and a read."""
        E = load_algebra(RESOURCES / "dual_numbers.alg")
        self.assertTrue(np.array_equal(parse_algebra(format_algebra(E)).structure, E.structure))

    def test_missing_structure_block(self):
        """Every basis element needs a structure block."""
        text = "field 3 1\ndim 2\nunit\n1 0\nsigma\n1 0\n0 1\nstructure 0\n1 0\n0 1\n"
        with self.assertRaises(SpecError):
            parse_algebra(text)


class TestFormFiles(unittest.TestCase):
    """.form files."""

    def test_load(self):
        """The hermitian plane has Witt class 0."""
        f = load_form(RESOURCES / "hermitian_plane.form")
        self.assertEqual(f.case.name, "complex_hermitian")
        self.assertEqual(witt_class_case(f), 0)

    def test_format(self):
        """Complex scalars are written as (a,b)."""
        f = load_form(RESOURCES / "hermitian_plane.form")
        expected = "case complex_hermitian\ndim 2\ngram\n(0,0) (0,1)\n(0,-1) (0,0)\n"
        self.assertEqual(format_form(f), expected)

    def test_scalar_outside_ring(self):
        """A quaternion entry in a complex case is rejected on its line."""
        text = "case complex_symmetric\ndim 1\ngram\n(0,0,1,0)\n"
        with self.assertRaises(SpecError) as ctx:
            parse_form(text)
        self.assertEqual(ctx.exception.line, 4)


class TestReports(unittest.TestCase):
    """JSON, table and CSV rendering."""

    def test_canonical_json(self):
        """Sorted keys, exact numbers and a final newline."""
        text = canonical_json({"b": np.int64(2), "a": Rational(1, 2), "c": Fraction(3, 4)})
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(json.loads(text), {"a": "1/2", "b": 2, "c": "3/4"})
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_floats_rejected(self):
        """Reports carry exact numbers only."""
        with self.assertRaises(InvariantError):
            to_plain({"x": 0.5})

    def test_report_without_timings(self):
        """runtime_ms is dropped unless timings are requested."""
        report = CheckReport("c", runtime_ms=4)
        self.assertNotIn("runtime_ms", json.loads(render(report)))
        self.assertEqual(json.loads(render(report, timings=True))["runtime_ms"], 4)

    def test_empty_list(self):
        """An empty result renders as an empty JSON list or an empty table."""
        self.assertEqual(render([]), "[]\n")
        self.assertEqual(render([], "table"), "(empty)\n")

    def test_marks_csv(self):
        """The table of marks keeps its labels in CSV."""
        lines = render(burnside_ring(catalog_group("S3")).mark_frame(), "csv").splitlines()
        self.assertTrue(lines[0].startswith("subgroup,b_G/H0[1],"))
        self.assertTrue(lines[0].endswith("b_G/H3[6]"))
        self.assertEqual(lines[1], "H0[1],6,3,2,1")

    def test_unknown_format(self):
        """Only json, table and csv."""
        with self.assertRaises(SpecError):
            render({}, "xml")

    def test_emit_writes_file(self):
        """emit creates parent directories and returns the text."""
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "nested" / "report.json"
            text = emit({"a": 1}, out=out)
            self.assertEqual(out.read_text(), text)

    def test_witness_hash(self):
        """SHA-256 hex digest of the witness matrix."""
        digest = witness_hash([[1, 0], [0, 1]])
        self.assertEqual(len(digest), 64)
        self.assertEqual(digest, witness_hash(np.eye(2, dtype=np.int64)))
