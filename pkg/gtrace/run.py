"""Drive gtrace: groups, Burnside rings, forms, algebras with involution and the check suite."""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence

import click
import numpy as np
import yaml

from gtrace.burnside.induction import restrict as burnside_restrict
from gtrace.burnside.projection import projection_suite
from gtrace.burnside.ring import BurnsideElement, BurnsideRing, burnside_ring
from gtrace.catalog import resolve_group, resolve_subgroup
from gtrace.config import DEFAULT_BUDGETS, Budgets, parse_suite_config
from gtrace.errors import BudgetExceededError, CheckFailure, InvariantError, SpecError
from gtrace.fields.finite_field import make_field
from gtrace.forms.constructions import (
    diagonal_form,
    extend_scalars,
    hyperbolic,
    induce,
    orthogonal_sum,
    permutation_form,
    restrict,
    scharlau_section,
    scharlau_transfer,
    tensor_scalar_form,
)
from gtrace.forms.galois import galois_algebra, is_self_dual_normal, sdnb_search, trace_form
from gtrace.forms.isometry import AUTO, BACKENDS, is_isometric
from gtrace.forms.space import EquivariantSpace
from gtrace.forms.witt import witt_class_plain
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.gset import GSet, coset_action, regular_gset, trivial_gset
from gtrace.groups.subgroups import is_solvable, subgroup_classes
from gtrace.hermitian.algebra import AlgebraWithInvolution, HermitianElement, endomorphism_algebra
from gtrace.hermitian.classes import class_set_exhaustive, diagonal_embed
from gtrace.hermitian.radical import reduce_mod_radical
from gtrace.hermitian.structural import classify_classes_structural, classify_element, same_class
from gtrace.hermitian.wedderburn import split_semisimple
from gtrace.lab.checks import CHECKS, run_check
from gtrace.lab.suite import connectivity_report, run_suite, suite_passed
from gtrace.realclosed.cases import CASES, classify_case, witt_group_of_case
from gtrace.report import CheckReport
from gtrace.utils.format_utils import (
    format_algebra,
    format_space,
    load_algebra,
    load_form,
    load_space,
    parse_entry,
)
from gtrace.utils.report_utils import FORMATS, JSON, emit, witness_hash

EXHAUSTIVE = "exhaustive"
STRUCTURAL = "structural"
BOTH = "both"


class UsageFailure(click.ClickException):
    """Malformed input or an exceeded budget; exits with status 2."""

    exit_code = 2


class GtraceGroup(click.Group):
    """Click group that maps gtrace errors to exit statuses."""

    def invoke(self, ctx: click.Context) -> Any:
        """Invoke the subcommand; input errors exit 2, failed identities exit 1."""
        try:
            return super().invoke(ctx)
        except (SpecError, BudgetExceededError) as err:
            raise UsageFailure(str(err)) from err
        except (CheckFailure, InvariantError) as err:
            logging.error(f"{type(err).__name__}: {err}")
            raise click.ClickException(str(err)) from err


@dataclass
class CommandSpec:
    """Global options shared by every subcommand."""

    seed: Optional[int] = None
    budget: Optional[int] = None
    out: Optional[str] = None
    fmt: Optional[str] = None
    timings: bool = False

    @property
    def budgets(self) -> Budgets:
        """Default budgets with the enumeration bound overridden by ``--budget``."""
        return DEFAULT_BUDGETS.with_enumeration(self.budget)

    @property
    def rng_seed(self) -> int:
        """``--seed``, 42 when not given."""
        return 42 if self.seed is None else self.seed

    def emit(self, obj: Any) -> None:
        """Render a report in the requested format (JSON by default)."""
        text = emit(obj, self.fmt or JSON, self.out, self.timings)
        if self.out is None:
            click.echo(text, nl=False)

    def emit_artifact(self, obj: Any, text: str) -> None:
        """Write an artifact file (space, algebra) unless a report format was requested."""
        if self.fmt is not None:
            self.emit(obj)
            return
        if self.out is None:
            click.echo(text, nl=False)
        else:
            with open(self.out, "w") as f:
                f.write(text)

    def finish(self, passed: bool) -> None:
        """Exit 1 when a check failed."""
        if not passed:
            raise click.exceptions.Exit(1)


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as err:
        raise SpecError(f"{what} must be whitespace-separated integers, got {text!r}") from err


def _gset(G: FiniteGroup, text: str, budgets: Budgets) -> GSet:
    """
    Parse a G-set reference.

    :param G: Group.
    :param text: ``cosets:<subgroup>``, ``regular``, ``trivial`` or ``trivial:<n>``.
    :param budgets: Size limits.
    """
    key, _, value = text.strip().partition(":")
    key = key.lower()
    if key == "cosets":
        return coset_action(G, resolve_subgroup(G, value, budgets))
    if key == "regular":
        return regular_gset(G)
    if key == "trivial":
        return trivial_gset(G, _parse_ints(value, "trivial G-set size")[0] if value.strip() else 1)
    raise SpecError(f"unknown G-set {text!r}, expected cosets:<subgroup>, regular or trivial")


def _element(ring: BurnsideRing, gset: Optional[GSet], coeffs: Optional[str]) -> BurnsideElement:
    if (gset is None) == (coeffs is None):
        raise SpecError("give exactly one of --gset and --element")
    if gset is not None:
        return ring.decompose_gset(gset)
    return ring.element(_parse_ints(coeffs, "--element"))


def _coords(E: AlgebraWithInvolution, text: str, epsilon: int) -> np.ndarray:
    z = np.asarray(_parse_ints(text, "element coordinates"), dtype=np.int64)
    if z.shape != (E.dim,):
        raise SpecError(f"expected {E.dim} coordinates, got {len(z)}")
    z = z % E.p
    if not E.is_hermitian(z, epsilon):
        raise SpecError(f"{text!r} is not an invertible {epsilon:+d}-hermitian element")
    return z


def _param(text: str) -> Dict[str, Any]:
    key, sep, value = text.partition("=")
    if not sep:
        raise SpecError(f"parameters are key=value, got {text!r}")
    return {key.strip(): yaml.safe_load(value)}


@click.group(cls=GtraceGroup)
@click.option("--seed", type=int, default=None, help="Seed for generated instances [42].")
@click.option("--budget", type=int, default=None, help="Override the enumeration budget.")
@click.option(
    "--out", "out", type=click.Path(dir_okay=False), default=None, help="Write output here."
)
@click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default=None, help="Report format [json]."
)
@click.option("--timings", is_flag=True, default=False, help="Include runtime_ms in reports.")
@click.option("-v", "--verbose", count=True, help="Log progress (-vv for debug).")
@click.pass_context
def main(ctx, seed, budget, out, fmt, timings, verbose):
    """
    Exact computations with G-equivariant forms, Burnside rings and hermitian classes.

    Global options come before the command group. Every command writes a JSON
    report (or a table or CSV with --format). Input errors exit with status 2 and
    failed checks with status 1.

    \b
    Command groups:
      group       finite groups and their subgroup classes
      burnside    Burnside rings, tables of marks, projection identities,
                  connectivity of the spectrum
      forms       equivariant epsilon-forms over F_q: isometry, Witt invariants,
                  sums, induction, restriction, scalar extension
      galois      G-Galois algebras over F_p and their trace forms
      hermitian   algebras with involution, radical, splitting, hermitian classes
      realclosed  forms over a real closed field, k(i) and the quaternions
      suite       property checks over seeded instance streams
    """
    level = logging.WARNING if not verbose else (logging.INFO if verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(message)s")
    ctx.obj = CommandSpec(seed=seed, budget=budget, out=out, fmt=fmt, timings=timings)


# -- groups ------------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def group():
    """Finite groups: catalog names, .grp files or inline descriptions."""


@group.command("info")
@click.argument("ref")
@click.pass_obj
def group_info(spec: CommandSpec, ref: str) -> None:
    """
    Order, generators and element orders of a group.

    :param ref: Group reference.
    """
    G = resolve_group(ref, spec.budgets)
    spec.emit(
        {
            "name": G.name,
            "order": G.order,
            "abelian": G.is_abelian,
            "solvable": is_solvable(G),
            "generators": [G.label(g) for g in G.generators],
            "elements": [
                {"index": a, "label": G.label(a), "order": G.element_order(a)}
                for a in range(G.order)
            ],
            "subgroup_classes": len(subgroup_classes(G, spec.budgets)),
        }
    )


@group.command("subgroups")
@click.argument("ref")
@click.pass_obj
def group_subgroups(spec: CommandSpec, ref: str) -> None:
    """
    Conjugacy classes of subgroups, one row per class.

    :param ref: Group reference.
    """
    G = resolve_group(ref, spec.budgets)
    table = subgroup_classes(G, spec.budgets)
    spec.emit(
        [
            {
                "class": i,
                "order": cls.order,
                "size": cls.size,
                "normal": cls.representative.is_normal,
                "representative": list(cls.representative.elements),
            }
            for i, cls in enumerate(table.classes)
        ]
    )


# -- burnside ------------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def burnside():
    """Burnside rings and tables of marks."""


@burnside.command("marks")
@click.option("--group", "-g", "group_ref", required=True)
@click.pass_obj
def burnside_marks(spec: CommandSpec, group_ref: str) -> None:
    """Table of marks; rows are subgroup classes, columns basis elements."""
    G = resolve_group(group_ref, spec.budgets)
    spec.emit(burnside_ring(G, spec.budgets).mark_frame())


@burnside.command("spectral")
@click.option("--group", "-g", "group_ref", required=True)
@click.option("--gset", default=None, help="cosets:<subgroup>, regular or trivial[:n].")
@click.option("--element", "coeffs", default=None, help="Basis coefficients, e.g. '1 0 2 0'.")
@click.pass_obj
def burnside_spectral(
    spec: CommandSpec, group_ref: str, gset: Optional[str], coeffs: Optional[str]
) -> None:
    """Ghost vector, characteristic polynomial and norm of an element."""
    G = resolve_group(group_ref, spec.budgets)
    ring = burnside_ring(G, spec.budgets)
    X = _gset(G, gset, spec.budgets) if gset else None
    spec.emit(ring.spectral(_element(ring, X, coeffs)))


@burnside.command("divpoly")
@click.option("--group", "-g", "group_ref", required=True)
@click.option("--gset", default=None, help="cosets:<subgroup>, regular or trivial[:n].")
@click.option("--element", "coeffs", default=None, help="Basis coefficients, e.g. '1 0 2 0'.")
@click.option("--restrict-to", "restrict_to", default=None, help="Subgroup to restrict to.")
@click.option("--prime", default=2, type=int)
@click.pass_obj
def burnside_divpoly(
    spec: CommandSpec,
    group_ref: str,
    gset: Optional[str],
    coeffs: Optional[str],
    restrict_to: Optional[str],
    prime: int,
) -> None:
    """
    Division polynomial F with x F(x) = N 1.

    With ``--restrict-to`` the element is first restricted to the subgroup; when that
    subgroup is a p-group and the G-set has size prime to p, N must be prime to p.
    """
    G = resolve_group(group_ref, spec.budgets)
    ring = burnside_ring(G, spec.budgets)
    X = _gset(G, gset, spec.budgets) if gset else None
    x = _element(ring, X, coeffs)
    if restrict_to:
        S = resolve_subgroup(G, restrict_to, spec.budgets)
        x = burnside_restrict(S, x, spec.budgets)
    data = x.ring.division_polynomial(x, prime, X.size if X is not None else None)
    spec.emit(
        {
            **data.to_dict(),
            "group": x.ring.group.name,
            "element": list(x.coeffs),
            "ghost": list(x.marks),
        }
    )


@burnside.command("project")
@click.option("--group", "-g", "group_ref", required=True)
@click.option("--subgroup", "-s", default="sylow2", help="Subgroup reference [sylow2].")
@click.option("--prime", default=2, type=int)
@click.pass_obj
def burnside_project(spec: CommandSpec, group_ref: str, subgroup: str, prime: int) -> None:
    """Projection-formula identities for a subgroup S of G."""
    G = resolve_group(group_ref, spec.budgets)
    S = resolve_subgroup(G, subgroup, spec.budgets)
    report = projection_suite(G, S, prime, spec.budgets)
    spec.emit(report)
    spec.finish(report.passed)


@burnside.command("connected")
@click.option("--group", "-g", "group_ref", required=True)
@click.pass_obj
def burnside_connected(spec: CommandSpec, group_ref: str) -> None:
    """Whether Spec(Burn(G)) is connected, compared against solvability of G."""
    report = connectivity_report(resolve_group(group_ref, spec.budgets), spec.budgets)
    spec.emit(report)
    spec.finish(report.passed)


# -- forms ---------------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def forms():
    """G-equivariant epsilon-forms over finite fields (.space files)."""


def _load(spec: CommandSpec, path: str) -> EquivariantSpace:
    return load_space(path, spec.budgets)


def _emit_space(spec: CommandSpec, X: EquivariantSpace) -> None:
    spec.emit_artifact(X, format_space(X))


@forms.command("build")
@click.option("--group", "-g", "group_ref", default="C1", help="Group acting trivially [C1].")
@click.option("--field", "-f", "p", required=True, type=int)
@click.option("--degree", "-m", default=1, type=int)
@click.option("--diagonal", "-d", required=True, help="Diagonal entries, e.g. '1 2'.")
@click.pass_obj
def forms_build(spec: CommandSpec, group_ref: str, p: int, degree: int, diagonal: str) -> None:
    """A diagonal symmetric form with trivial group action."""
    F = make_field(p, degree, spec.budgets)
    entries = [parse_entry(F, tok) for tok in diagonal.split()]
    _emit_space(spec, diagonal_form(F, entries, resolve_group(group_ref, spec.budgets)))


@forms.command("sum")
@click.argument("first", type=click.Path(exists=True))
@click.argument("second", type=click.Path(exists=True))
@click.pass_obj
def forms_sum(spec: CommandSpec, first: str, second: str) -> None:
    """Orthogonal sum."""
    _emit_space(spec, orthogonal_sum(_load(spec, first), _load(spec, second)))


@forms.command("tensor")
@click.argument("scalar", type=click.Path(exists=True))
@click.argument("space", type=click.Path(exists=True))
@click.pass_obj
def forms_tensor(spec: CommandSpec, scalar: str, space: str) -> None:
    """Tensor product V (x) X of a symmetric form V with a space X."""
    _emit_space(spec, tensor_scalar_form(_load(spec, scalar), _load(spec, space)))


@forms.command("hyperbolic")
@click.argument("space", type=click.Path(exists=True))
@click.option("--epsilon", "-e", default=None, type=click.Choice(["1", "-1"]))
@click.pass_obj
def forms_hyperbolic(spec: CommandSpec, space: str, epsilon: Optional[str]) -> None:
    """H(M) on the module M of a space; epsilon defaults to that of the space."""
    X = _load(spec, space)
    _emit_space(spec, hyperbolic(X.module, int(epsilon) if epsilon else X.epsilon))


@forms.command("induce")
@click.argument("space", type=click.Path(exists=True))
@click.option("--group", "-g", "group_ref", required=True)
@click.option("--subgroup", "-s", required=True, help="Subgroup the space lives over.")
@click.pass_obj
def forms_induce(spec: CommandSpec, space: str, group_ref: str, subgroup: str) -> None:
    """Induce a space from a subgroup S to G."""
    G = resolve_group(group_ref, spec.budgets)
    S = resolve_subgroup(G, subgroup, spec.budgets)
    _emit_space(spec, induce(S, _load(spec, space)))


@forms.command("restrict")
@click.argument("space", type=click.Path(exists=True))
@click.option("--subgroup", "-s", required=True)
@click.pass_obj
def forms_restrict(spec: CommandSpec, space: str, subgroup: str) -> None:
    """Restrict a space to a subgroup."""
    X = _load(spec, space)
    _emit_space(spec, restrict(X, resolve_subgroup(X.group, subgroup, spec.budgets)))


@forms.command("extend")
@click.argument("space", type=click.Path(exists=True))
@click.option("--degree", "-m", required=True, type=int)
@click.pass_obj
def forms_extend(spec: CommandSpec, space: str, degree: int) -> None:
    """Extend scalars from F_q to F_{q^m}."""
    _emit_space(spec, extend_scalars(_load(spec, space), degree))


@forms.command("transfer")
@click.argument("space", type=click.Path(exists=True))
@click.option("--twist", default=None, help="Nonzero a in F_{p^m} [self-dual section].")
@click.pass_obj
def forms_transfer(spec: CommandSpec, space: str, twist: Optional[str]) -> None:
    """Transfer Tr(a B) of a space over F_{p^m} down to F_p."""
    X = _load(spec, space)
    F = X.field
    a = parse_entry(F, twist) if twist else scharlau_section(F.p, F.m)
    _emit_space(spec, scharlau_transfer(X, a))


@forms.command("isometric")
@click.argument("first", type=click.Path(exists=True))
@click.argument("second", type=click.Path(exists=True))
@click.option("--backend", "-b", default=AUTO, type=click.Choice(BACKENDS))
@click.pass_obj
def forms_isometric(spec: CommandSpec, first: str, second: str, backend: str) -> None:
    """Decide G-isometry, with a verified witness when one is found."""
    verdict = is_isometric(_load(spec, first), _load(spec, second), backend, spec.budgets)
    out = verdict.to_dict()
    out["witness_hash"] = None if verdict.witness is None else witness_hash(verdict.witness)
    spec.emit(out)


@forms.command("witt")
@click.argument("space", type=click.Path(exists=True))
@click.pass_obj
def forms_witt(spec: CommandSpec, space: str) -> None:
    """Witt invariants of a symmetric form without group action."""
    rank_parity, disc = witt_class_plain(_load(spec, space))
    spec.emit({"rank_parity": rank_parity, "discriminant_class": disc})


@forms.command("permform")
@click.option("--group", "-g", "group_ref", required=True)
@click.option("--gset", required=True, help="cosets:<subgroup>, regular or trivial[:n].")
@click.option("--field", "-f", "p", required=True, type=int)
@click.option("--degree", "-m", default=1, type=int)
@click.pass_obj
def forms_permform(spec: CommandSpec, group_ref: str, gset: str, p: int, degree: int) -> None:
    """The permutation form of a G-set."""
    G = resolve_group(group_ref, spec.budgets)
    F = make_field(p, degree, spec.budgets)
    _emit_space(spec, permutation_form(_gset(G, gset, spec.budgets), F))


# -- galois --------------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def galois():
    """G-Galois algebras over F_p and their trace forms."""


def _galois_options(f):
    f = click.option("--frobenius", "-r", default=0, type=int, help="Frobenius element [0].")(f)
    f = click.option("--field", "-f", "p", required=True, type=int)(f)
    return click.option("--group", "-g", "group_ref", required=True)(f)


@galois.command("build")
@_galois_options
@click.pass_obj
def galois_build(spec: CommandSpec, group_ref: str, p: int, frobenius: int) -> None:
    """Structure constants and G-action of the algebra."""
    G = resolve_group(group_ref, spec.budgets)
    spec.emit(galois_algebra(G, p, frobenius, spec.budgets))


@galois.command("traceform")
@_galois_options
@click.pass_obj
def galois_traceform(spec: CommandSpec, group_ref: str, p: int, frobenius: int) -> None:
    """The trace form Tr(xy) as a space file."""
    G = resolve_group(group_ref, spec.budgets)
    _emit_space(spec, trace_form(galois_algebra(G, p, frobenius, spec.budgets)))


@galois.command("sdnb")
@_galois_options
@click.pass_obj
def galois_sdnb(spec: CommandSpec, group_ref: str, p: int, frobenius: int) -> None:
    """Search for a self-dual normal basis."""
    G = resolve_group(group_ref, spec.budgets)
    L = galois_algebra(G, p, frobenius, spec.budgets)
    x = sdnb_search(L, spec.budgets)
    spec.emit(
        {
            "algebra": L.algebra.name,
            "exists": x is not None,
            "generator": None if x is None else x,
            "verified": x is not None and is_self_dual_normal(L, x),
        }
    )


# -- hermitian -----------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def hermitian():
    """Algebras with involution (.alg files) and their hermitian classes."""


def _epsilon_option(f):
    return click.option("--epsilon", "-e", default="1", type=click.Choice(["1", "-1"]))(f)


@hermitian.command("endo")
@click.argument("space", type=click.Path(exists=True))
@click.pass_obj
def hermitian_endo(spec: CommandSpec, space: str) -> None:
    """End_G(M) of a space with its adjoint involution, as an algebra file."""
    E = endomorphism_algebra(_load(spec, space))
    spec.emit_artifact(E, format_algebra(E))


@hermitian.command("classes")
@click.argument("algebra", type=click.Path(exists=True))
@_epsilon_option
@click.option("--method", default=STRUCTURAL, type=click.Choice([EXHAUSTIVE, STRUCTURAL, BOTH]))
@click.pass_obj
def hermitian_classes(spec: CommandSpec, algebra: str, epsilon: str, method: str) -> None:
    """Classes of invertible eps-hermitian elements."""
    E = load_algebra(algebra, spec.budgets)
    eps = int(epsilon)
    if method == EXHAUSTIVE:
        spec.emit(class_set_exhaustive(E, eps, spec.budgets))
        return
    structural = classify_classes_structural(E, eps, spec.budgets)
    if method == BOTH:
        exhaustive = class_set_exhaustive(E, eps, spec.budgets)
        if len(exhaustive) != len(structural):
            raise InvariantError(
                f"exhaustive finds {len(exhaustive)} classes, structural {len(structural)}"
            )
    spec.emit(structural)


@hermitian.command("reduce")
@click.argument("algebra", type=click.Path(exists=True))
@click.option("--quotient", default=None, type=click.Path(dir_okay=False), help="Write E/J here.")
@click.pass_obj
def hermitian_reduce(spec: CommandSpec, algebra: str, quotient: Optional[str]) -> None:
    """Jacobson radical J and the quotient E/J with its induced involution."""
    E = load_algebra(algebra, spec.budgets)
    red = reduce_mod_radical(E, spec.budgets)
    if quotient:
        with open(quotient, "w") as f:
            f.write(format_algebra(red.quotient))
    spec.emit(
        {
            "algebra": E.name,
            "dim": E.dim,
            "radical": red.radical,
            "radical_dim": len(red.radical),
            "quotient_dim": red.quotient_dim,
        }
    )


@hermitian.command("split")
@click.argument("algebra", type=click.Path(exists=True))
@click.option("--reduce", "reduce_first", is_flag=True, help="Split E/J instead of E.")
@click.pass_obj
def hermitian_split(spec: CommandSpec, algebra: str, reduce_first: bool) -> None:
    """Sigma-stable simple components of a semisimple algebra."""
    E = load_algebra(algebra, spec.budgets)
    if reduce_first:
        E = reduce_mod_radical(E, spec.budgets).quotient
    spec.emit([c.to_dict() for c in split_semisimple(E, spec.budgets)])


@hermitian.command("classify")
@click.argument("algebra", type=click.Path(exists=True))
@_epsilon_option
@click.option("--element", "-z", "elements", multiple=True, required=True, help="Coordinates of z.")
@click.pass_obj
def hermitian_classify(
    spec: CommandSpec, algebra: str, epsilon: str, elements: Sequence[str]
) -> None:
    """Structural label of one element, or whether two elements are in the same class."""
    E = load_algebra(algebra, spec.budgets)
    eps = int(epsilon)
    zs = [_coords(E, z, eps) for z in elements]
    if len(zs) == 1:
        spec.emit({"label": list(classify_element(E, eps, zs[0], spec.budgets))})
    elif len(zs) == 2:
        spec.emit(same_class(E, eps, zs[0], zs[1], spec.budgets))
    else:
        raise SpecError("give one element to classify or two to compare")


@hermitian.command("embed")
@click.argument("algebra", type=click.Path(exists=True))
@_epsilon_option
@click.option("--element", "-z", required=True, help="Coordinates of u.")
@click.option("--size", "-n", required=True, type=int, help="Matrix size n.")
@click.pass_obj
def hermitian_embed(spec: CommandSpec, algebra: str, epsilon: str, element: str, size: int) -> None:
    """The block-diagonal element diag(u, ..., u) of the n x n matrices over E."""
    E = load_algebra(algebra, spec.budgets)
    u = diagonal_embed(HermitianElement(E, int(epsilon), _coords(E, element, int(epsilon))), size)
    spec.emit({"algebra": u.algebra.name, "dim": u.algebra.dim, "element": u.z})


# -- real closed ---------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def realclosed():
    """Exact forms over a real closed field, k(i) and the quaternions (.form files)."""


@realclosed.command("classify")
@click.argument("form", type=click.Path(exists=True))
@click.pass_obj
def realclosed_classify(spec: CommandSpec, form: str) -> None:
    """Rank or signature of a form and its Witt class."""
    f = load_form(form)
    spec.emit({"case": f.case.name, "dim": f.dim, **classify_case(f).to_dict()})


@realclosed.command("witt")
@click.option("--case", "cases", multiple=True, type=click.Choice(list(CASES)), help="Cases [all].")
@click.pass_obj
def realclosed_witt(spec: CommandSpec, cases: Sequence[str]) -> None:
    """Witt group of each case, inferred from sampled forms."""
    names = list(cases) or list(CASES)
    rows = []
    for name in names:
        rng = np.random.default_rng([spec.rng_seed, list(CASES).index(name)])
        c = CASES[name]
        rows.append(
            {
                "case": name,
                "ring": c.ring,
                "involution": c.involution,
                "epsilon": c.epsilon,
                "witt_group": witt_group_of_case(name, rng),
            }
        )
    spec.emit(rows)


# -- suite ---------------------------------------------------------------------------


@main.group(cls=GtraceGroup)
def suite():
    """Property checks over seeded instance streams."""


@suite.command("run")
@click.argument("kind", type=click.Choice(list(CHECKS)))
@click.option("yaml_file", "-y", default=None, type=click.Path(exists=True), help="Suite YAML.")
@click.option("--param", "params", multiple=True, help="Check parameter override, key=value.")
@click.option("--negative-control", is_flag=True, default=False)
@click.pass_obj
def suite_run(
    spec: CommandSpec,
    kind: str,
    yaml_file: Optional[str],
    params: Sequence[str],
    negative_control: bool,
) -> None:
    """
    Run one check with the parameters of its suite entry.

    :param kind: Check name.
    :param yaml_file: Suite YAML, defaults to suite.yaml at the repo root.
    :param params: Overrides of single parameters.
    :param negative_control: Corrupt the second space of every instance.
    """
    config = parse_suite_config(yaml_file)
    merged: Dict[str, Any] = next((dict(e) for e in config.checks if e.get("kind") == kind), {})
    merged.pop("kind", None)
    for text in params:
        merged.update(_param(text))
    if negative_control:
        merged["negative_control"] = True
    budgets = config.budgets.with_enumeration(spec.budget)
    seed = spec.seed if spec.seed is not None else config.seeds[0]
    report = run_check(kind, merged, seed, budgets)
    spec.emit(report)
    spec.finish(suite_passed([report]))


@suite.command("all")
@click.option("yaml_file", "-y", default=None, type=click.Path(exists=True), help="Suite YAML.")
@click.option("processes", "-p", default=None, type=int, help="Worker processes.")
@click.option("--negative-control", is_flag=True, default=False)
@click.pass_obj
def suite_all(
    spec: CommandSpec, yaml_file: Optional[str], processes: Optional[int], negative_control: bool
) -> None:
    """
    Run every configured check and the Burnside identities over the catalog.

    :param yaml_file: Suite YAML, defaults to suite.yaml at the repo root.
    :param processes: Number of processes to use.
    :param negative_control: Run the checks as negative controls.
    """
    config = parse_suite_config(yaml_file)
    config = replace(config, budgets=config.budgets.with_enumeration(spec.budget))
    if spec.seed is not None:
        config = replace(config, seed=spec.seed, seeds=[spec.seed])
    reports: List[CheckReport] = run_suite(config, processes, negative_control)
    passed = suite_passed(reports)
    spec.emit({"passed": passed, "negative_control": negative_control, "reports": reports})
    spec.finish(passed)


if __name__ == "__main__":
    main()
