"""Constructions of equivariant spaces: sums, tensors, hyperbolic spaces, Ind/Res, transfers."""

import logging
from typing import Optional, Sequence

import numpy as np

from gtrace.errors import SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc, field_embedding, make_field
from gtrace.forms.space import EquivariantSpace, ModuleRep, _check_compatible, make_space, transpose
from gtrace.forms.witt import witt_class_plain
from gtrace.groups.finite_group import FiniteGroup, trivial_group
from gtrace.groups.gset import GSet, left_cosets
from gtrace.groups.subgroups import SubgroupRef


def diagonal_form(
    F: FieldDesc, entries: Sequence[int], group: Optional[FiniteGroup] = None
) -> EquivariantSpace:
    """
    The symmetric form <a_1, ..., a_d> with trivial action.

    :param F: Field.
    :param entries: Nonzero diagonal encodings.
    :param group: Acting group, trivial group by default.
    """
    d = len(entries)
    gram = np.zeros((d, d), dtype=np.int64)
    gram[np.arange(d), np.arange(d)] = np.asarray(entries, dtype=np.int64) % F.q
    return make_space(F, group or trivial_group(), 1, gram)


def zero_space(
    F: FieldDesc, group: Optional[FiniteGroup] = None, epsilon: int = 1
) -> EquivariantSpace:
    """The 0-dimensional space."""
    return make_space(F, group or trivial_group(), epsilon, np.zeros((0, 0), dtype=np.int64))


def orthogonal_sum(X: EquivariantSpace, Y: EquivariantSpace) -> EquivariantSpace:
    """Block-diagonal Gram matrix and representation."""
    _check_compatible(X, Y)
    if X.epsilon != Y.epsilon:
        raise SpecError("orthogonal sum of spaces with different epsilon")
    a, b = X.dim, Y.dim
    gram = np.zeros((a + b, a + b), dtype=np.int64)
    gram[:a, :a] = X.gram
    gram[a:, a:] = Y.gram
    return EquivariantSpace(X.module.direct_sum(Y.module), X.epsilon, gram)


def tensor_scalar_form(V: EquivariantSpace, X: EquivariantSpace) -> EquivariantSpace:
    """
    V tensor X for a plain symmetric form V: Gram ``kron(B_V, B_X)``, action ``I kron rho``.

    :param V: Symmetric nonsingular form over the trivial group.
    :param X: Equivariant space over the same field.
    """
    if V.field != X.field:
        raise SpecError("tensor product over different fields")
    if V.group.order != 1 or V.epsilon != 1:
        raise SpecError("the scalar factor must be a plain symmetric form")
    F = X.field
    gram = F.kron(V.gram, X.gram)
    eye = np.eye(V.dim, dtype=np.int64)
    rep = np.stack([F.kron(eye, X.rep[g]) for g in range(X.group.order)])
    return EquivariantSpace(ModuleRep(F, X.group, rep), X.epsilon, gram)


def hyperbolic(N: ModuleRep, epsilon: int) -> EquivariantSpace:
    """
    H_eps(N) on N + N*, with Gram ``[[0, I], [eps I, 0]]``.

    :param N: Module.
    :param epsilon: +1 or -1.
    """
    F = N.field
    d = N.dim
    gram = np.zeros((2 * d, 2 * d), dtype=np.int64)
    gram[:d, d:] = np.eye(d, dtype=np.int64)
    gram[d:, :d] = F.scale(1 if epsilon == 1 else F.neg(1), np.eye(d, dtype=np.int64))
    return EquivariantSpace(N.direct_sum(N.dual()), epsilon, gram)


def coset_representatives(G: FiniteGroup, S: SubgroupRef) -> np.ndarray:
    """Least element of each left coset gS, in coset order."""
    return np.array([c[0] for c in left_cosets(G, S)], dtype=np.int64)


def induce(S: SubgroupRef, X: EquivariantSpace) -> EquivariantSpace:
    """
    Ind from S to G of a space over ``S.as_group``.

    The basis vector (i, v) has index ``i * dim X + v`` where i runs over the left
    cosets t_i S. Block (j, i) of rho(g) is rho_X(t_j^-1 g t_i) when g t_i lies in t_j S.

    :param S: Subgroup of G.
    :param X: Space over ``S.as_group``.
    """
    if X.group != S.as_group:
        raise SpecError("induction expects a space over the subgroup")
    G, F = S.parent, X.field
    reps = coset_representatives(G, S)
    k, d = len(reps), X.dim
    coset_of = np.zeros(G.order, dtype=np.int64)
    for i, c in enumerate(left_cosets(G, S)):
        coset_of[list(c)] = i
    rep = np.zeros((G.order, k * d, k * d), dtype=np.int64)
    T, inv = G.table, G.inverse
    for g in range(G.order):
        for i, t in enumerate(reps):
            gt = T[g, t]
            j = coset_of[gt]
            s = S.local_index(int(T[inv[reps[j]], gt]))
            rep[g, j * d : (j + 1) * d, i * d : (i + 1) * d] = X.rep[s]
    gram = np.zeros((k * d, k * d), dtype=np.int64)
    for i in range(k):
        gram[i * d : (i + 1) * d, i * d : (i + 1) * d] = X.gram
    return EquivariantSpace(ModuleRep(F, G, rep), X.epsilon, gram)


def restrict(X: EquivariantSpace, S: SubgroupRef) -> EquivariantSpace:
    """Res from G to S: same Gram, representation restricted to S."""
    return EquivariantSpace(X.module.restrict(S), X.epsilon, X.gram)


def permutation_module(F: FieldDesc, X: GSet) -> ModuleRep:
    """Permutation matrices of a G-set: column x has its 1 in row g x."""
    n = X.size
    rep = np.zeros((X.group.order, n, n), dtype=np.int64)
    g_idx = np.repeat(np.arange(X.group.order), n)
    x_idx = np.tile(np.arange(n), X.group.order)
    rep[g_idx, X.action.ravel(), x_idx] = 1
    return ModuleRep(F, X.group, rep)


def permutation_form(X: GSet, F: FieldDesc) -> EquivariantSpace:
    """The unit form on the permutation module of X (orthonormal basis X)."""
    return EquivariantSpace(permutation_module(F, X), 1, np.eye(X.size, dtype=np.int64))


def extend_scalars(X: EquivariantSpace, m: int) -> EquivariantSpace:
    """
    Read the same matrices over F_{q^m}.

    :param X: Space over F_q.
    :param m: Degree of the extension.
    """
    if m < 1:
        raise SpecError("extension degree must be positive")
    if m == 1:
        return X
    small = X.field
    big = make_field(small.p, small.m * m)
    emb = field_embedding(small, big)
    module = ModuleRep(big, X.group, emb[X.rep])
    return EquivariantSpace(module, X.epsilon, emb[X.gram])


def scharlau_transfer(X: EquivariantSpace, a: int) -> EquivariantSpace:
    """
    Transfer from F_{p^m} to F_p along s(z) = Tr(a z).

    The F_p-basis of the underlying space is ``alpha^l e_k`` with index ``k * m + l``,
    alpha the root of the field modulus.

    :param X: Space over F_{p^m}.
    :param a: Nonzero twist.
    """
    K = X.field
    if a % K.q == 0:
        raise SpecError("the transfer functional must be nonzero")
    base = make_field(K.p)
    m, d = K.m, X.dim
    alpha = K.p ** np.arange(m, dtype=np.int64)
    # Gram[(k,l),(k',l')] = Tr(a alpha^l alpha^l' B[k,k'])
    pairs = K.mul(alpha[:, None], alpha[None, :])
    scaled = K.mul(a, np.asarray(pairs))
    prod = K.mul(X.gram[:, None, :, None], np.asarray(scaled)[None, :, None, :])
    gram = np.asarray(K.trace_to_base(prod), dtype=np.int64).reshape(d * m, d * m)
    # rho(g)(alpha^l e_k) = sum_j (rho[j,k] alpha^l) e_j, expanded in the power basis
    images = K.mul(X.rep[:, :, :, None], alpha[None, None, None, :])
    digits = K.coords(np.asarray(images))
    rep = np.transpose(digits, (0, 1, 4, 2, 3)).reshape(X.group.order, d * m, d * m)
    return EquivariantSpace(ModuleRep(base, X.group, rep), X.epsilon, gram)


def transfer_form(K: FieldDesc, a: int) -> EquivariantSpace:
    """The plain form z -> Tr(a z^2) on F_{p^m} over F_p."""
    return scharlau_transfer(diagonal_form(K, [1]), a)


def scharlau_section(p: int, m: int) -> int:
    """
    First twist a (in encoding order) whose transfer form is Witt-equivalent to <1>.

    :param p: Odd prime, the base field F_p.
    :param m: Odd extension degree.
    :return: Encoding of a in F_{p^m}.
    """
    if m % 2 == 0:
        raise SpecError("the section scan needs an odd extension degree")
    K = make_field(p, m)
    target = witt_class_plain(diagonal_form(make_field(p), [1]))
    for a in range(1, K.q):
        if witt_class_plain(transfer_form(K, a)) == target:
            logging.info(f"Scharlau section over F_{p}^{m}: a = {a}")
            return a
    raise SpecError(f"no twist over F_{K.q} has transfer class <1>")


def invariant_forms(module: ModuleRep, epsilon: int) -> np.ndarray:
    """
    Basis of the G-invariant epsilon-symmetric matrices on a module (possibly singular).

    :param module: Module.
    :param epsilon: +1 or -1.
    :return: Array (k, d, d).
    """
    F, d = module.field, module.dim
    if d == 0:
        return np.zeros((0, 0, 0), dtype=np.int64)
    eps = 1 if epsilon == 1 else F.neg(1)
    rows = []
    eye = np.eye(d * d, dtype=np.int64)
    for g in module.group.generators:
        Rt = transpose(module.rep[g])
        rows.append(F.sub(F.kron(Rt, Rt), eye))
    sym = np.zeros((d * d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            sym[i * d + j, i * d + j] = 1
            sym[i * d + j, j * d + i] = F.sub(sym[i * d + j, j * d + i], eps)
    rows.append(sym)
    basis = linalg.nullspace(F, np.vstack(rows))
    return basis.reshape(-1, d, d)
