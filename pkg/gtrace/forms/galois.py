"""
G-Galois algebras over a prime field, their trace forms and self-dual normal bases.

For an element g of order d the carrier is the algebra of maps f: G -> F_{p^d}
with ``f(g x) = f(x)^p``, multiplied pointwise, with G acting by ``(h f)(x) = f(x h)``.
Such a map is fixed by its values on the least elements x_c of the right cosets
<g> x; the F_p-basis puts ``alpha^l`` at x_c (index ``c d + l``) and zero on the
other cosets.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, InvariantError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc, make_field
from gtrace.forms.constructions import permutation_form, permutation_module
from gtrace.forms.isometry import is_isometric
from gtrace.forms.space import EquivariantSpace, ModuleRep, module_isomorphism
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.gset import regular_gset
from gtrace.hermitian.algebra import AlgebraWithInvolution


def _right_cosets(G: FiniteGroup, g: int) -> List[Tuple[int, ...]]:
    """Cosets <g> x, each listed as (x_c, g x_c, g^2 x_c, ...) with x_c least, ordered by x_c."""
    d = G.element_order(g)
    seen = set()
    out = []
    for x in range(G.order):
        if x in seen:
            continue
        orbit = [x]
        for _ in range(d - 1):
            orbit.append(G.mul(g, orbit[-1]))
        seen.update(orbit)
        out.append(tuple(orbit))
    return out


@dataclass(frozen=True, eq=False)
class GGaloisAlgebra:
    """A G-Galois algebra L over F_p given by its Frobenius element."""

    group: FiniteGroup
    frobenius_element: int
    extension: FieldDesc
    algebra: AlgebraWithInvolution
    module: ModuleRep

    @property
    def field(self) -> FieldDesc:
        """Base field F_p."""
        return self.algebra.field

    @property
    def degree(self) -> int:
        """Order d of the Frobenius element."""
        return self.extension.m

    @property
    def dim(self) -> int:
        """Dimension over F_p, equal to |G|."""
        return self.algebra.dim

    @cached_property
    def cosets(self) -> List[Tuple[int, ...]]:
        """Right cosets of <g> with their least representatives first."""
        return _right_cosets(self.group, self.frobenius_element)

    def act(self, h: int, x) -> np.ndarray:
        """h x for x in basis coordinates."""
        return self.module.rep[h] @ np.asarray(x, dtype=np.int64) % self.field.p

    def values(self, x) -> np.ndarray:
        """The map G -> F_{p^d} represented by x, as encodings indexed by group element."""
        K, d = self.extension, self.degree
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(self.group.order, dtype=np.int64)
        for c, orbit in enumerate(self.cosets):
            a = K.encode(x[c * d : (c + 1) * d])
            for k, y in enumerate(orbit):
                out[y] = K.frobenius(a, k)
        return out

    def to_dict(self):
        """Plain-data view."""
        return {
            "group": self.group.name,
            "p": self.field.p,
            "frobenius_element": self.group.label(self.frobenius_element),
            "degree": self.degree,
            "dim": self.dim,
            "structure": self.algebra.structure.tolist(),
            "action": {str(h): self.module.rep[h].tolist() for h in self.group.generators},
        }


def _check_automorphisms(algebra: AlgebraWithInvolution, module: ModuleRep) -> None:
    n = algebra.dim
    basis = np.eye(n, dtype=np.int64)
    for h in module.group.generators:
        images = (module.rep[h] @ basis.T % algebra.p).T
        lhs = (algebra.mul(basis[:, None, :], basis[None, :, :]) @ module.rep[h].T) % algebra.p
        rhs = algebra.mul(images[:, None, :], images[None, :, :])
        if not np.array_equal(lhs, rhs):
            raise InvariantError(f"element {h} does not act by an algebra automorphism")


def galois_algebra(
    G: FiniteGroup, p: int, g: int = 0, budgets: Budgets = DEFAULT_BUDGETS
) -> GGaloisAlgebra:
    """
    Build the G-Galois algebra over F_p whose Frobenius is the element g.

    :param G: Group.
    :param p: Odd prime.
    :param g: Frobenius element; the identity gives the split algebra Maps(G, F_p).
    :param budgets: Bounds the size of F_{p^d}.
    :return: Algebra with its G-action, after checking commutativity, the automorphism
        property, nonsingularity of the trace form and freeness of rank one over F_p[G].
    """
    base = make_field(p)
    d = G.element_order(g)
    K = make_field(p, d, budgets)
    cosets = _right_cosets(G, g)
    reps = [orbit[0] for orbit in cosets]
    n = G.order
    alpha = p ** np.arange(d, dtype=np.int64)
    # values of the basis maps at the coset representatives
    at_reps = np.zeros((n, len(reps)), dtype=np.int64)
    for c in range(len(reps)):
        at_reps[c * d : (c + 1) * d, c] = alpha
    where = {}
    for c, orbit in enumerate(cosets):
        for k, y in enumerate(orbit):
            where[y] = (c, k)

    def value(b: int, y: int) -> int:
        c, k = where[y]
        return int(K.frobenius(int(at_reps[b, c]), k))

    products = K.mul(at_reps[:, None, :], at_reps[None, :, :])
    T = K.coords(np.asarray(products)).reshape(n, n, n)
    unit = np.zeros(n, dtype=np.int64)
    unit[np.arange(len(reps)) * d] = 1
    algebra = AlgebraWithInvolution(
        base, T, unit, np.eye(n, dtype=np.int64), name=f"L({G.name}, {G.label(g)}, F_{p})"
    )
    if not np.array_equal(algebra.structure, np.transpose(algebra.structure, (1, 0, 2))):
        raise InvariantError("carrier is not commutative")
    rep = np.zeros((G.order, n, n), dtype=np.int64)
    for h in range(G.order):
        for b in range(n):
            shifted = [value(b, G.mul(x, h)) for x in reps]
            rep[h, :, b] = K.coords(np.asarray(shifted)).reshape(-1)
    module = ModuleRep(base, G, rep)
    _check_automorphisms(algebra, module)
    L = GGaloisAlgebra(G, g, K, algebra, module)
    trace_form(L)
    regular = permutation_module(base, regular_gset(G))
    if module_isomorphism(regular, module, budgets) is None:
        raise InvariantError("carrier is not free of rank one over F_p[G]")
    logging.info(f"Galois algebra over F_{p} for {G.name} with Frobenius of order {d}")
    return L


def trace_form(L: GGaloisAlgebra) -> EquivariantSpace:
    """The G-quadratic space (L, Tr(xy)) in the carrier basis."""
    E = L.algebra
    tr = np.einsum("kjj->k", E.structure) % E.p
    gram = E.structure @ tr % E.p
    if linalg.det(E.field, gram) == 0:
        raise InvariantError("trace form is singular: the carrier is not etale")
    return EquivariantSpace(L.module, 1, gram)


def is_self_dual_normal(L: GGaloisAlgebra, x, form: Optional[EquivariantSpace] = None) -> bool:
    """Tr((h x)(h' x)) = delta(h, h') for all h, h'."""
    form = form or trace_form(L)
    X = np.stack([L.act(h, x) for h in range(L.group.order)], axis=1)
    gram = X.T @ form.gram @ X % L.field.p
    return bool(np.array_equal(gram, np.eye(L.group.order, dtype=np.int64)))


def sdnb_search(L: GGaloisAlgebra, budgets: Budgets = DEFAULT_BUDGETS) -> Optional[np.ndarray]:
    """
    A generator x of a self-dual normal basis of L, or None when none exists.

    The first basis element is tried first; otherwise x is the image of the identity
    under an equivariant isometry from the permutation form of G onto the trace form.

    :raises BudgetExceededError: When isometry was decided without a witness.
    """
    form = trace_form(L)
    first = L.algebra.basis_element(0)
    if is_self_dual_normal(L, first, form):
        return first
    regular = permutation_form(regular_gset(L.group), L.field)
    verdict = is_isometric(regular, form, budgets=budgets)
    if not verdict.isometric:
        logging.info(f"No self-dual normal basis in {L.algebra.name}")
        return None
    if verdict.witness is None:
        raise BudgetExceededError("enumeration", L.algebra.size, budgets.enumeration)
    x = verdict.witness[:, 0] % L.field.p
    if not is_self_dual_normal(L, x, form):
        raise InvariantError("isometry image of the identity is not self-dual normal")
    return x


def galois_algebras(
    G: FiniteGroup, p: int, budgets: Budgets = DEFAULT_BUDGETS
) -> List[GGaloisAlgebra]:
    """One algebra per conjugacy class of Frobenius elements (least element of each class)."""
    seen = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        seen.update(int(c) for c in G.conjugation_table[:, g])
        order = G.element_order(g)
        if p**order > budgets.max_field_size:
            logging.warning(f"Skipping Frobenius {G.label(g)}: F_{p}^{order} too large")
            continue
        out.append(galois_algebra(G, p, g, budgets))
    return out
