"""
Seeded streams of equivariant spaces for the property checks.

Instance ``i`` of a stream is drawn from ``default_rng([seed, i])`` alone, so a stream
is reproducible and any instance can be regenerated from its index.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import SpecError
from gtrace.fields import linalg
from gtrace.fields.finite_field import FieldDesc, make_field
from gtrace.forms.constructions import hyperbolic, invariant_forms, permutation_module
from gtrace.forms.space import EquivariantSpace, ModuleRep, combine_matrices, intertwiners
from gtrace.groups.finite_group import FiniteGroup
from gtrace.groups.gset import coset_action
from gtrace.groups.subgroups import subgroup_classes

RANDOM = "random"
SCALAR = "scalar"
CONJUGATION = "conjugation"
HYPERBOLIC_PADDING = "hyperbolic"
STRATEGIES = (RANDOM, SCALAR, CONJUGATION)

SPACE = "space"
PAIR = "pair"
TRIPLE = "triple"
MODULE_PAIR = "module_pair"
KINDS = (SPACE, PAIR, TRIPLE, MODULE_PAIR)

ATTEMPTS = 32


@dataclass
class Instance:
    """One generated instance: its index, the strategy used and the spaces."""

    index: int
    strategy: str
    spaces: Tuple[EquivariantSpace, ...]

    def to_dict(self) -> Dict:
        """Plain-data view, used as failure witness."""
        return {
            "index": self.index,
            "strategy": self.strategy,
            "spaces": [X.to_dict() for X in self.spaces],
        }


def _random_invertible(rng: np.random.Generator, F: FieldDesc, d: int) -> np.ndarray:
    while True:
        P = rng.integers(0, F.q, size=(d, d))
        if linalg.det(F, P) != 0:
            return P.astype(np.int64)


def change_basis(rng: np.random.Generator, X: EquivariantSpace) -> EquivariantSpace:
    """
    The same space in a random basis: ``rho' = P^-1 rho P`` and ``B' = P^T B P``.

    P is then an isometry from the result onto X.
    """
    F = X.field
    if X.dim == 0:
        return X
    P = _random_invertible(rng, F, X.dim)
    Pinv = linalg.inverse(F, P)
    rep = F.matmul(F.matmul(Pinv, X.rep), P)
    gram = F.matmul(F.matmul(P.T, X.gram), P)
    return EquivariantSpace(ModuleRep(F, X.group, rep), X.epsilon, gram)


@dataclass
class InstanceGenerator:
    """
    Deterministic generator of spaces over small groups and prime fields.

    :param seed: Stream seed.
    :param groups: Groups drawn from.
    :param primes: Odd primes drawn from.
    :param max_dim: Largest dimension of a generated space.
    :param epsilons: Symmetry types drawn from.
    :param strategies: Twin strategies, used round-robin by instance index.
    :param budgets: Size limits.
    """

    seed: int
    groups: Sequence[FiniteGroup]
    primes: Sequence[int] = (3,)
    max_dim: int = 2
    epsilons: Sequence[int] = (1,)
    strategies: Sequence[str] = STRATEGIES
    budgets: Budgets = DEFAULT_BUDGETS
    _summands: Dict[Tuple[int, int], List[ModuleRep]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        """Validate the parameters."""
        if not self.groups:
            raise SpecError("the generator needs at least one group")
        if any(p % 2 == 0 for p in self.primes) or not self.primes:
            raise SpecError(f"primes must be odd, got {list(self.primes)}")
        unknown = set(self.strategies) - set(STRATEGIES)
        if unknown or not self.strategies:
            raise SpecError(f"unknown strategies {sorted(unknown)}, expected {STRATEGIES}")
        if -1 in self.epsilons and self.max_dim < 2:
            raise SpecError("alternating spaces need max_dim >= 2")
        if self.max_dim < 1:
            raise SpecError("max_dim must be positive")

    def rng(self, index: int) -> np.random.Generator:
        """The generator of instance ``index``."""
        return np.random.default_rng([self.seed, index])

    def summands(self, F: FieldDesc, G: FiniteGroup) -> List[ModuleRep]:
        """Permutation modules F[G/H] of dimension at most max_dim, trivial module first."""
        key = (id(G), F.q)
        if key not in self._summands:
            out = []
            for cls in reversed(subgroup_classes(G, self.budgets).classes):
                if cls.representative.index <= self.max_dim:
                    out.append(permutation_module(F, coset_action(G, cls.representative)))
            self._summands[key] = out
        return self._summands[key]

    def draw_module(
        self, rng: np.random.Generator, F: FieldDesc, G: FiniteGroup, dim: int
    ) -> ModuleRep:
        """A sum of permutation modules of total dimension ``dim``."""
        pool = self.summands(F, G)
        module = None
        left = dim
        while left:
            fitting = [M for M in pool if M.dim <= left]
            M = fitting[int(rng.integers(len(fitting)))]
            module = M if module is None else module.direct_sum(M)
            left -= M.dim
        return module

    def draw_form(
        self, rng: np.random.Generator, module: ModuleRep, epsilon: int
    ) -> Optional[np.ndarray]:
        """A random nonsingular invariant epsilon-symmetric Gram matrix, or None."""
        F = module.field
        basis = invariant_forms(module, epsilon)
        if basis.shape[0] == 0:
            return None
        coeffs = rng.integers(0, F.q, size=(ATTEMPTS, basis.shape[0]))
        cand = combine_matrices(F, coeffs, basis)
        ok = linalg.batch_nonsingular(F, cand)
        return cand[int(np.argmax(ok))] if ok.any() else None

    def draw_space(
        self, rng: np.random.Generator, F: FieldDesc, G: FiniteGroup, epsilon: int
    ) -> EquivariantSpace:
        """
        A random space: unit or hyperbolic form on a permutation module, replaced by a random
        invariant form when one is found, then written in a random basis.
        """
        if epsilon == 1:
            dim = int(rng.integers(1, self.max_dim + 1))
            module = self.draw_module(rng, F, G, dim)
            base = np.eye(dim, dtype=np.int64)
            X = EquivariantSpace(module, 1, base)
        else:
            half = int(rng.integers(1, self.max_dim // 2 + 1))
            X = hyperbolic(self.draw_module(rng, F, G, half), -1)
        gram = self.draw_form(rng, X.module, epsilon)
        if gram is not None:
            X = X.with_gram(gram)
        return change_basis(rng, X)

    def automorphism(self, rng: np.random.Generator, module: ModuleRep) -> np.ndarray:
        """A random invertible intertwiner of a module with itself."""
        F = module.field
        H = intertwiners(module, module)
        while True:
            coeffs = rng.integers(0, F.q, size=(ATTEMPTS, H.shape[0]))
            cand = combine_matrices(F, coeffs, H)
            ok = linalg.batch_nonsingular(F, cand)
            if ok.any():
                return cand[int(np.argmax(ok))]

    def twin(
        self, rng: np.random.Generator, X: EquivariantSpace, strategy: str
    ) -> EquivariantSpace:
        """
        A second space on the module of X.

        ``random`` draws an independent invariant form, ``scalar`` twists X by a
        non-square and ``conjugation`` transports X by a module automorphism.
        """
        F = X.field
        if strategy == SCALAR:
            return X.scale(F.nonsquare)
        if strategy == CONJUGATION:
            phi = self.automorphism(rng, X.module)
            return X.with_gram(F.matmul(F.matmul(phi.T, X.gram), phi))
        gram = self.draw_form(rng, X.module, X.epsilon)
        return X if gram is None else X.with_gram(gram)

    def padding(
        self, rng: np.random.Generator, X: EquivariantSpace
    ) -> Tuple[str, EquivariantSpace]:
        """A third space N over the data of X: hyperbolic on a random module, or random."""
        if rng.integers(2):
            half = int(rng.integers(1, max(1, self.max_dim // 2) + 1))
            N = hyperbolic(self.draw_module(rng, X.field, X.group, half), X.epsilon)
            return HYPERBOLIC_PADDING, N
        return RANDOM, self.draw_space(rng, X.field, X.group, X.epsilon)

    def instance(self, kind: str, index: int) -> Instance:
        """
        Instance ``index`` of a stream.

        :param kind: ``space`` (X), ``pair`` (X, X'), ``triple`` (X, X', N) or
            ``module_pair`` (X and X in a random basis).
        :param index: Position in the stream.
        """
        if kind not in KINDS:
            raise SpecError(f"unknown instance kind {kind!r}, expected one of {KINDS}")
        rng = self.rng(index)
        G = self.groups[int(rng.integers(len(self.groups)))]
        F = make_field(int(rng.choice(self.primes)), 1, self.budgets)
        epsilon = int(rng.choice(self.epsilons))
        X = self.draw_space(rng, F, G, epsilon)
        strategy = self.strategies[index % len(self.strategies)]
        if kind == SPACE:
            return Instance(index, RANDOM, (X,))
        if kind == MODULE_PAIR:
            return Instance(index, CONJUGATION, (X, change_basis(rng, X)))
        Y = self.twin(rng, X, strategy)
        if kind == PAIR:
            return Instance(index, strategy, (X, Y))
        pad, N = self.padding(rng, X)
        return Instance(index, f"{strategy}+{pad}", (X, Y, N))

    def generate(self, kind: str, count: int) -> Iterator[Instance]:
        """The first ``count`` instances of the stream."""
        for index in range(count):
            yield self.instance(kind, index)
