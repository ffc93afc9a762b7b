"""
Line-oriented text formats: groups (.grp), spaces (.space), algebras (.alg) and exact forms (.form).

Every format allows ``#`` comments and blank lines; parse errors carry the 1-based
line number of the offending line.
"""

import re
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from gtrace.catalog import resolve_group
from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import GtraceError, SpecError
from gtrace.fields.finite_field import FieldDesc, make_field
from gtrace.forms.space import EquivariantSpace, ModuleRep
from gtrace.groups.finite_group import FiniteGroup
from gtrace.hermitian.algebra import AlgebraWithInvolution
from gtrace.realclosed.cases import ExactForm, get_case
from gtrace.realclosed.scalars import as_matrix, format_scalar, parse_scalar

VECTOR_RE = re.compile(r"^\[(?P<body>[^\[\]]*)\]$")

Line = Tuple[int, str]


class _Reader:
    """Cursor over the meaningful lines of a text."""

    def __init__(self, text: str):
        self.lines: List[Line] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.split("#", 1)[0].strip()
            if stripped:
                self.lines.append((lineno, stripped))
        self.pos = 0

    @property
    def done(self) -> bool:
        return self.pos >= len(self.lines)

    @property
    def lineno(self) -> Optional[int]:
        if self.done:
            return self.lines[-1][0] if self.lines else None
        return self.lines[self.pos][0]

    def peek_key(self) -> Optional[str]:
        if self.done:
            return None
        return self.lines[self.pos][1].split(None, 1)[0].lower()

    def take(self, key: str) -> Tuple[int, str]:
        """Consume a ``key value`` line and return (line number, value)."""
        if self.done:
            raise SpecError(f"expected {key!r}, found end of file", self.lineno)
        lineno, line = self.lines[self.pos]
        head, _, value = line.partition(" ")
        if head.lower() != key:
            raise SpecError(f"expected {key!r}, found {head!r}", lineno)
        self.pos += 1
        return lineno, value.strip()

    def take_int(self, key: str) -> int:
        lineno, value = self.take(key)
        try:
            return int(value)
        except ValueError as err:
            raise SpecError(f"{key} must be an integer, got {value!r}", lineno) from err

    def rows(self, count: int, width: Optional[int] = None) -> Iterator[Tuple[int, List[str]]]:
        """Consume ``count`` lines of whitespace-separated tokens."""
        for _ in range(count):
            if self.done:
                raise SpecError(f"expected {count} rows, found end of file", self.lineno)
            lineno, line = self.lines[self.pos]
            tokens = line.split()
            if width is not None and len(tokens) != width:
                raise SpecError(f"expected {width} entries, got {len(tokens)}", lineno)
            self.pos += 1
            yield lineno, tokens


# -- groups ---------------------------------------------------------------------


def format_group(G: FiniteGroup) -> str:
    """The ``.grp`` text of G as an explicit table (element order is preserved)."""
    rows = "\n".join(" ".join(str(int(x)) for x in row) for row in G.table)
    header = f"# {G.name}\n" if G.name else ""
    return f"{header}group\ntable:\n{rows}\n"


def group_reference(G: FiniteGroup) -> str:
    """A one-line reference that resolves back to G: its name, else an inline table."""
    if G.name:
        try:
            if resolve_group(G.name) == G:
                return G.name
        except GtraceError:
            pass
    return "table: " + "; ".join(" ".join(str(int(x)) for x in row) for row in G.table)


def _resolve_reference(ref: str, lineno: int, budgets: Budgets) -> FiniteGroup:
    if ref.lower().startswith("table:"):
        ref = "table:\n" + "\n".join(ref.split(":", 1)[1].split(";"))
    try:
        return resolve_group(ref, budgets)
    except SpecError as err:
        raise SpecError(f"cannot resolve group {ref!r}: {err}", lineno) from err


# -- field entries ----------------------------------------------------------------


def format_entry(F: FieldDesc, x: int) -> str:
    """An integer for the prime field, ``[c0,...,c_{m-1}]`` otherwise."""
    if F.is_prime:
        return str(int(x))
    return "[" + ",".join(str(int(c)) for c in F.coords(x)) + "]"


def parse_entry(F: FieldDesc, token: str, lineno: Optional[int] = None) -> int:
    """Inverse of :func:`format_entry`; a bare integer is read as an encoding."""
    match = VECTOR_RE.match(token)
    try:
        if match:
            coords = [int(c) for c in match.group("body").split(",")]
            if len(coords) != F.m or any(not 0 <= c < F.p for c in coords):
                raise SpecError(f"bad coefficient vector {token!r} for {F!r}", lineno)
            return int(F.encode(coords))
        value = int(token)
    except ValueError as err:
        raise SpecError(f"bad field entry {token!r}", lineno) from err
    if not 0 <= value < F.q:
        raise SpecError(f"entry {value} is not an element of {F!r}", lineno)
    return value


def _matrix(reader: _Reader, F: FieldDesc, d: int) -> np.ndarray:
    out = np.zeros((d, d), dtype=np.int64)
    for i, (lineno, tokens) in enumerate(reader.rows(d, d)):
        out[i] = [parse_entry(F, t, lineno) for t in tokens]
    return out


def _format_matrix(F: FieldDesc, A) -> str:
    return "\n".join(" ".join(format_entry(F, x) for x in row) for row in np.asarray(A))


def _field_header(reader: _Reader, budgets: Budgets) -> FieldDesc:
    lineno, value = reader.take("field")
    try:
        p, m = (int(t) for t in value.split())
    except ValueError as err:
        raise SpecError(f"field line must be 'field p m', got {value!r}", lineno) from err
    try:
        F = make_field(p, m, budgets)
    except SpecError as err:
        raise SpecError(str(err), lineno) from err
    if reader.peek_key() == "modulus":
        lineno, value = reader.take("modulus")
        if tuple(int(t) for t in value.split()) != F.modulus:
            raise SpecError(f"modulus {value} differs from {F.modulus} for {F!r}", lineno)
    return F


def _format_field_header(F: FieldDesc) -> str:
    out = f"field {F.p} {F.m}\n"
    if not F.is_prime:
        out += "modulus " + " ".join(str(c) for c in F.modulus) + "\n"
    return out


# -- spaces -------------------------------------------------------------------------


def parse_space(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> EquivariantSpace:
    """
    Parse a space file::

        field 3 1
        epsilon 1
        group S3
        dim 2
        gram
        1 0
        0 1
        rep 1
        0 1
        1 0

    ``rep`` blocks give the matrices of generating elements; the rest of the
    representation is reconstructed by closure. Without ``rep`` blocks the group
    acts trivially.

    :param text: File contents.
    :param budgets: Size limits.
    :raises SpecError: On malformed input, with the line number.
    """
    reader = _Reader(text)
    F = _field_header(reader, budgets)
    lineno, value = reader.take("epsilon")
    if value not in ("1", "+1", "-1"):
        raise SpecError(f"epsilon must be +1 or -1, got {value!r}", lineno)
    epsilon = int(value)
    lineno, ref = reader.take("group")
    G = _resolve_reference(ref, lineno, budgets)
    d = reader.take_int("dim")
    reader.take("gram")
    gram = _matrix(reader, F, d)
    images = {}
    while not reader.done:
        lineno, value = reader.take("rep")
        try:
            g = int(value)
        except ValueError as err:
            raise SpecError(f"rep needs an element index, got {value!r}", lineno) from err
        if not 0 <= g < G.order:
            raise SpecError(f"element {g} out of range for a group of order {G.order}", lineno)
        images[g] = _matrix(reader, F, d)
    start = lineno
    try:
        if images:
            module = ModuleRep.from_generators(F, G, images)
        else:
            module = ModuleRep.trivial(F, G, d)
        return EquivariantSpace(module, epsilon, gram)
    except GtraceError as err:
        raise SpecError(str(err), start) from err


def format_space(X: EquivariantSpace) -> str:
    """The space file of X, with rep blocks for the generators of its group."""
    F = X.field
    parts = [
        _format_field_header(F),
        f"epsilon {X.epsilon}\n",
        f"group {group_reference(X.group)}\n",
        f"dim {X.dim}\n",
        "gram\n",
    ]
    if X.dim:
        parts.append(_format_matrix(F, X.gram) + "\n")
        for g in X.group.generators:
            parts.append(f"rep {g}\n{_format_matrix(F, X.rep[g])}\n")
    return "".join(parts)


# -- algebras ---------------------------------------------------------------------


def parse_algebra(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> AlgebraWithInvolution:
    """
    Parse an algebra file over a prime field::

        field 3 1
        name F3xF3
        dim 2
        unit
        1 1
        sigma
        0 1
        1 0
        structure 0
        1 0
        0 0
        structure 1
        0 0
        0 1

    Row j of ``structure i`` holds the coordinates of b_i b_j; sigma acts on row vectors.
    """
    reader = _Reader(text)
    F = _field_header(reader, budgets)
    name = ""
    if reader.peek_key() == "name":
        name = reader.take("name")[1]
    n = reader.take_int("dim")
    reader.take("unit")
    unit = np.zeros(n, dtype=np.int64)
    if n:
        lineno, tokens = next(reader.rows(1, n))
        unit[:] = [parse_entry(F, t, lineno) for t in tokens]
    reader.take("sigma")
    sigma = _matrix(reader, F, n)
    T = np.zeros((n, n, n), dtype=np.int64)
    seen = set()
    while not reader.done:
        lineno, value = reader.take("structure")
        i = int(value) if value.isdigit() else -1
        if not 0 <= i < n or i in seen:
            raise SpecError(f"bad or repeated structure block {value!r}", lineno)
        seen.add(i)
        T[i] = _matrix(reader, F, n)
    if len(seen) != n:
        raise SpecError(f"expected {n} structure blocks, got {len(seen)}", reader.lineno)
    try:
        return AlgebraWithInvolution(F, T, unit, sigma, name=name)
    except GtraceError as err:
        raise SpecError(str(err), reader.lineno) from err


def format_algebra(E: AlgebraWithInvolution) -> str:
    """The algebra file of E."""
    F = E.field
    parts = [_format_field_header(F)]
    if E.name:
        parts.append(f"name {E.name}\n")
    parts.append(f"dim {E.dim}\nunit\n")
    if E.dim:
        parts.append(" ".join(str(int(x)) for x in E.unit) + "\n")
    parts.append("sigma\n")
    if E.dim:
        parts.append(_format_matrix(F, E.sigma) + "\n")
    for i in range(E.dim):
        parts.append(f"structure {i}\n{_format_matrix(F, E.structure[i])}\n")
    return "".join(parts)


# -- exact forms -------------------------------------------------------------------


def parse_form(text: str) -> ExactForm:
    """
    Parse an exact form over k, k(i) or the quaternions::

        case complex_hermitian
        dim 2
        gram
        (1,0) (0,1)
        (0,-1) (2,0)

    Real scalars are fractions such as ``-3/2``; k(i) and quaternion scalars are
    component tuples without spaces.
    """
    reader = _Reader(text)
    lineno, name = reader.take("case")
    try:
        case = get_case(name)
    except SpecError as err:
        raise SpecError(str(err), lineno) from err
    d = reader.take_int("dim")
    reader.take("gram")
    rows = []
    for lineno, tokens in reader.rows(d, d):
        rows.append([parse_scalar(t, case.ring, lineno) for t in tokens])
    if not reader.done:
        raise SpecError("unexpected text after the Gram matrix", reader.lineno)
    try:
        return ExactForm(case, as_matrix(rows))
    except GtraceError as err:
        raise SpecError(str(err), lineno) from err


def format_form(f: ExactForm) -> str:
    """The form file of f."""
    ring = f.case.ring
    rows = "\n".join(" ".join(format_scalar(x, ring) for x in row) for row in f.gram)
    return f"case {f.case.name}\ndim {f.dim}\ngram\n" + (rows + "\n" if f.dim else "")


# -- files -------------------------------------------------------------------------


def read_text(path: Union[str, Path]) -> str:
    """Contents of an input file."""
    path = Path(path)
    if not path.exists():
        raise SpecError(f"input file {path} does not exist")
    return path.read_text()


def load_space(path: Union[str, Path], budgets: Budgets = DEFAULT_BUDGETS) -> EquivariantSpace:
    """Parse a ``.space`` file."""
    return parse_space(read_text(path), budgets)


def load_algebra(
    path: Union[str, Path], budgets: Budgets = DEFAULT_BUDGETS
) -> AlgebraWithInvolution:
    """Parse an ``.alg`` file."""
    return parse_algebra(read_text(path), budgets)


def load_form(path: Union[str, Path]) -> ExactForm:
    """Parse a ``.form`` file."""
    return parse_form(read_text(path))
