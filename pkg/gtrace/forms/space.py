"""
Representations and G-equivariant epsilon-symmetric spaces in matrix form.

A space is a Gram matrix B over F_q together with matrices rho(g) for every group
element, with ``B^T = eps B`` and ``rho(g)^T B rho(g) = B``. The dual module is
``rho(g^-1)^T``, so dual and bidual comparisons are transposes.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import InvariantError, SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.subgroups import SubgroupRef

CHUNK = 2**14


def transpose(A: np.ndarray) -> np.ndarray:
    """Transpose of the last two axes."""
    return np.swapaxes(np.asarray(A), -1, -2)


@dataclass(frozen=True, eq=False)
class ModuleRep:
    """An F_q[G]-module: one d x d matrix per group element."""

    field: FieldDesc
    group: FiniteGroup
    rep: np.ndarray

    def __post_init__(self):
        """Check shape, identity and the homomorphism law on generators."""
        R = np.asarray(self.rep, dtype=np.int64)
        if R.ndim != 3 or R.shape[0] != self.group.order or R.shape[1] != R.shape[2]:
            raise SpecError(f"representation must have shape (|G|, d, d), got {R.shape}")
        if R.size and (R.min() < 0 or R.max() >= self.field.q):
            raise SpecError("representation entries are not field encodings")
        d = R.shape[1]
        if not np.array_equal(R[0], np.eye(d, dtype=np.int64)):
            raise InvariantError("identity does not act as the identity matrix")
        T = self.group.table
        F = self.field
        for g in self.group.generators:
            if not np.array_equal(R[T[:, g]], F.matmul(R, R[g])):
                raise InvariantError("representation is not a homomorphism")
        R.setflags(write=False)
        object.__setattr__(self, "rep", R)

    @property
    def dim(self) -> int:
        """Dimension over F_q."""
        return self.rep.shape[1]

    @classmethod
    def from_generators(
        cls, field: FieldDesc, group: FiniteGroup, images: Dict[int, np.ndarray]
    ) -> "ModuleRep":
        """
        Extend matrices given on generating elements to the whole group.

        :param field: Field.
        :param group: Group.
        :param images: Mapping element index -> d x d matrix; the keys must generate G.
        :raises SpecError: When the images are inconsistent or do not generate.
        """
        if not images:
            raise SpecError("at least one generator image is required")
        mats = {int(g): np.asarray(m, dtype=np.int64) % field.q for g, m in images.items()}
        d = next(iter(mats.values())).shape[0]
        rep: Dict[int, np.ndarray] = {0: np.eye(d, dtype=np.int64)}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g, m in mats.items():
                y = int(group.table[x, g])
                prod = field.matmul(rep[x], m)
                if y in rep:
                    if not np.array_equal(rep[y], prod):
                        raise SpecError(f"generator images are inconsistent at element {y}")
                else:
                    rep[y] = prod
                    queue.append(y)
        if len(rep) != group.order:
            raise SpecError("generator images do not generate the group")
        return cls(field, group, np.stack([rep[a] for a in range(group.order)]))

    @classmethod
    def trivial(cls, field: FieldDesc, group: FiniteGroup, dim: int = 1) -> "ModuleRep":
        """dim copies of the trivial module."""
        return cls(field, group, np.tile(np.eye(dim, dtype=np.int64), (group.order, 1, 1)))

    def dual(self) -> "ModuleRep":
        """Contragredient module rho(g^-1)^T."""
        return ModuleRep(self.field, self.group, transpose(self.rep[self.group.inverse]).copy())

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        """Block-diagonal sum."""
        _check_compatible(self, other)
        n, a, b = self.group.order, self.dim, other.dim
        R = np.zeros((n, a + b, a + b), dtype=np.int64)
        R[:, :a, :a] = self.rep
        R[:, a:, a:] = other.rep
        return ModuleRep(self.field, self.group, R)

    def restrict(self, S: SubgroupRef) -> "ModuleRep":
        """Restriction to S, realized over ``S.as_group``."""
        if S.parent != self.group:
            raise SpecError("restriction needs a subgroup of the module's group")
        return ModuleRep(self.field, S.as_group, self.rep[list(S.elements)])

    def same_as(self, other: "ModuleRep") -> bool:
        """Equal field, group and matrices."""
        return (
            self.field == other.field
            and self.group == other.group
            and np.array_equal(self.rep, other.rep)
        )


def _check_compatible(a, b):
    if a.field != b.field:
        raise SpecError(f"fields differ: {a.field!r} vs {b.field!r}")
    if a.group != b.group:
        raise SpecError("groups differ")


def eps_encoding(F: FieldDesc, epsilon: int) -> int:
    """Encoding of +1 or -1."""
    if epsilon not in (1, -1):
        raise SpecError(f"epsilon must be +1 or -1, got {epsilon}")
    return 1 if epsilon == 1 else F.neg(1)


@dataclass(frozen=True, eq=False)
class EquivariantSpace:
    """A nonsingular G-invariant epsilon-symmetric bilinear space over F_q."""

    module: ModuleRep
    epsilon: int
    gram: np.ndarray

    def __post_init__(self):
        """Check symmetry type, nonsingularity and invariance."""
        F = self.field
        B = np.asarray(self.gram, dtype=np.int64)
        d = self.module.dim
        if B.shape != (d, d):
            raise SpecError(f"Gram matrix must be {d} x {d}, got {B.shape}")
        if B.size and (B.min() < 0 or B.max() >= F.q):
            raise SpecError("Gram entries are not field encodings")
        if not np.array_equal(B.T, F.scale(eps_encoding(F, self.epsilon), B)):
            raise InvariantError(f"Gram matrix is not {self.epsilon:+d}-symmetric")
        if linalg.det(F, B) == 0:
            raise InvariantError("Gram matrix is singular")
        R = self.module.rep
        gens = list(self.group.generators)
        if gens and not np.all(F.matmul(F.matmul(transpose(R[gens]), B), R[gens]) == B):
            raise InvariantError("form is not G-invariant")
        B.setflags(write=False)
        object.__setattr__(self, "gram", B)

    @property
    def field(self) -> FieldDesc:
        """Base field."""
        return self.module.field

    @property
    def group(self) -> FiniteGroup:
        """Acting group."""
        return self.module.group

    @property
    def rep(self) -> np.ndarray:
        """Matrices rho(g)."""
        return self.module.rep

    @property
    def dim(self) -> int:
        """Dimension over F_q."""
        return self.module.dim

    def scale(self, lam: int) -> "EquivariantSpace":
        """The twist (M, lam h) by a nonzero scalar."""
        if lam % self.field.q == 0:
            raise SpecError("scaling by zero")
        return EquivariantSpace(self.module, self.epsilon, self.field.scale(lam, self.gram))

    def negate(self) -> "EquivariantSpace":
        """The space (M, -h)."""
        return self.scale(self.field.neg(1))

    def n_fold(self, n: int) -> "EquivariantSpace":
        """Orthogonal sum of n copies."""
        from gtrace.forms.constructions import orthogonal_sum, zero_space

        out = zero_space(self.field, self.group, self.epsilon)
        for _ in range(n):
            out = orthogonal_sum(out, self)
        return out

    def with_gram(self, gram) -> "EquivariantSpace":
        """Same module and epsilon, another Gram matrix."""
        return EquivariantSpace(self.module, self.epsilon, np.asarray(gram, dtype=np.int64))

    def same_as(self, other: "EquivariantSpace") -> bool:
        """Equal data (not isometry)."""
        return (
            self.epsilon == other.epsilon
            and self.module.same_as(other.module)
            and np.array_equal(self.gram, other.gram)
        )

    def to_dict(self) -> Dict:
        """Plain-data view with generator matrices only."""
        return {
            "field": [self.field.p, self.field.m],
            "epsilon": self.epsilon,
            "group": self.group.name,
            "dim": self.dim,
            "gram": self.gram.tolist(),
            "rep": {str(g): self.rep[g].tolist() for g in self.group.generators},
        }


def make_space(
    field: FieldDesc,
    group: FiniteGroup,
    epsilon: int,
    gram,
    rep: Optional[np.ndarray] = None,
) -> EquivariantSpace:
    """
    Build a space; without ``rep`` the group acts trivially.

    :param field: Field.
    :param group: Group.
    :param epsilon: +1 or -1.
    :param gram: d x d Gram matrix.
    :param rep: Optional (|G|, d, d) representation.
    """
    B = np.asarray(gram, dtype=np.int64) % field.q
    if rep is None:
        module = ModuleRep.trivial(field, group, B.shape[0])
    else:
        module = ModuleRep(field, group, np.asarray(rep, dtype=np.int64))
    return EquivariantSpace(module, epsilon, B)


def combine_matrices(F: FieldDesc, coeffs, basis) -> np.ndarray:
    """
    Linear combinations of basis matrices.

    :param F: Field.
    :param coeffs: Array (N, k) of encodings.
    :param basis: Array (k, a, b).
    :return: Array (N, a, b).
    """
    C = np.asarray(coeffs, dtype=np.int64)
    H = np.asarray(basis, dtype=np.int64)
    if F.is_prime:
        return np.tensordot(C, H, axes=(1, 0)) % F.p
    out = np.zeros((C.shape[0],) + H.shape[1:], dtype=np.int64)
    for i in range(H.shape[0]):
        out = np.asarray(F.add(out, F.mul(C[:, i, None, None], H[i][None])), dtype=np.int64)
    return out


def intertwiners(M: ModuleRep, N: ModuleRep) -> np.ndarray:
    """
    Basis of Hom_G(M, N): matrices phi with ``phi rho_M(g) = rho_N(g) phi``.

    Equations are imposed on generators only, with phi flattened row-major.

    :param M: Source module.
    :param N: Target module.
    :return: Array (k, dim N, dim M).
    """
    _check_compatible(M, N)
    F = M.field
    a, b = N.dim, M.dim
    if a == 0 or b == 0:
        return np.zeros((0, a, b), dtype=np.int64)
    rows = []
    for g in M.group.generators:
        left = F.kron(np.eye(a, dtype=np.int64), transpose(M.rep[g]))
        right = F.kron(N.rep[g], np.eye(b, dtype=np.int64))
        rows.append(F.sub(left, right))
    system = np.vstack(rows) if rows else np.zeros((0, a * b), dtype=np.int64)
    return linalg.nullspace(F, system).reshape(-1, a, b)


def module_isomorphism(
    M: ModuleRep,
    N: ModuleRep,
    budgets: Budgets = DEFAULT_BUDGETS,
    seed: int = 0,
    samples: int = 64,
) -> Optional[np.ndarray]:
    """
    An invertible intertwiner M -> N, or None when the modules are not isomorphic.

    Non-isomorphism is first certified by Hom dimensions; then a seeded sample of
    Hom(M, N) is tried; then Hom(M, N) is enumerated within the enumeration budget.

    :param M: Source module.
    :param N: Target module.
    :param budgets: Size limits.
    :param seed: Seed of the sampling stage.
    :param samples: Number of random elements tried before enumerating.
    :raises BudgetExceededError: When neither stage decides and Hom is too large.
    """
    _check_compatible(M, N)
    F = M.field
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    H = intertwiners(M, N)
    k = H.shape[0]
    if k == 0:
        return None
    if k != intertwiners(M, M).shape[0] or k != intertwiners(N, N).shape[0]:
        return None
    rng = np.random.default_rng(seed)
    C = rng.integers(0, F.q, size=(samples, k))
    cand = combine_matrices(F, C, H)
    ok = linalg.batch_nonsingular(F, cand)
    if ok.any():
        return cand[int(np.argmax(ok))]
    total = F.q**k
    budgets.check("enumeration", total)
    logging.info(f"Enumerating {total} intertwiners for a module isomorphism")
    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        cand = combine_matrices(F, linalg.enumerate_coefficients(F.q, k, start, stop), H)
        ok = linalg.batch_nonsingular(F, cand)
        if ok.any():
            return cand[int(np.argmax(ok))]
    return None
