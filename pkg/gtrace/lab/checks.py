"""The property checks and their registry."""

import logging
from typing import Any, Dict, Iterator, Optional, Tuple

from gtrace.catalog import resolve_group, resolve_subgroup
from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import SpecError
from gtrace.fields.finite_field import make_field
from gtrace.forms.constructions import (
    diagonal_form,
    extend_scalars,
    hyperbolic,
    induce,
    orthogonal_sum,
    restrict,
)
from gtrace.forms.space import module_isomorphism
from gtrace.lab.check import Check
from gtrace.lab.generator import MODULE_PAIR, PAIR, TRIPLE, Instance, InstanceGenerator
from gtrace.report import CheckReport

DEMONSTRATION = "demonstration"


class CancellationCheck(Check):
    """X + N = X' + N implies X = X'."""

    name = "cancellation"
    identity = "cancellation"
    kind = TRIPLE

    def hypothesis(self, instance: Instance) -> bool:
        """X + N = X' + N."""
        X, Y, N = instance.spaces
        return self.decide(orthogonal_sum(X, N), orthogonal_sum(Y, N)).isometric

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """X = X'."""
        X, Y, _ = instance.spaces
        verdict = self.decide(X, Y)
        return verdict.isometric, {"verdict": verdict.to_dict()}


class DivisionCheck(Check):
    """
    n X = n Y implies X = Y, for odd n.

    With even n the stream is replaced by the pair <1>, <2> over F_5, whose doubles
    are isometric; the report then records the expected failure.
    """

    name = "div_odd"
    identity = "division"
    kind = PAIR
    DEFAULTS = {**Check.DEFAULTS, "n": 3}

    def __init__(
        self,
        params: Optional[Dict[str, Any]] = None,
        seed: int = 42,
        budgets: Budgets = DEFAULT_BUDGETS,
    ):
        """Instantiate DivisionCheck; n must be at least 2."""
        super().__init__(params, seed, budgets)
        self.n = int(self.params["n"])
        if self.n < 2:
            raise SpecError(f"division needs n >= 2, got {self.n}")
        if self.n % 2 == 0:
            logging.info(f"div_odd with n = {self.n} runs as a demonstration")
            self.report.extra["expected_failure"] = True

    def instances(self) -> Iterator[Instance]:
        """The seeded stream, or the single demonstration pair for even n."""
        if self.n % 2:
            return super().instances()
        F = make_field(5)
        return iter([Instance(0, DEMONSTRATION, (diagonal_form(F, [1]), diagonal_form(F, [2])))])

    def hypothesis(self, instance: Instance) -> bool:
        """n X = n Y."""
        X, Y = instance.spaces
        return self.decide(X.n_fold(self.n), Y.n_fold(self.n)).isometric

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """X = Y, with the n-fold witness recorded."""
        X, Y = instance.spaces
        verdict = self.decide(X, Y)
        details = {"verdict": verdict.to_dict(), "n": self.n}
        if not verdict.isometric and X.dim == Y.dim:
            details["n_fold_verdict"] = self.decide(X.n_fold(self.n), Y.n_fold(self.n)).to_dict()
        return verdict.isometric, details


class OddExtensionCheck(Check):
    """X = Y over F_{q^m} for odd m implies X = Y over F_q."""

    name = "odd_extension"
    identity = "odd extension descent"
    kind = PAIR
    DEFAULTS = {**Check.DEFAULTS, "m": 3}

    def __init__(
        self,
        params: Optional[Dict[str, Any]] = None,
        seed: int = 42,
        budgets: Budgets = DEFAULT_BUDGETS,
    ):
        """Instantiate OddExtensionCheck; m must be odd."""
        super().__init__(params, seed, budgets)
        self.m = int(self.params["m"])
        if self.m < 1 or self.m % 2 == 0:
            raise SpecError(f"the extension degree must be odd, got {self.m}")

    def hypothesis(self, instance: Instance) -> bool:
        """X = Y after extending scalars."""
        X, Y = instance.spaces
        return self.decide(extend_scalars(X, self.m), extend_scalars(Y, self.m)).isometric

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """X = Y."""
        X, Y = instance.spaces
        verdict = self.decide(X, Y)
        return verdict.isometric, {"verdict": verdict.to_dict(), "m": self.m}


class IndResSylowCheck(Check):
    """Res Ind V1 = Res Ind V2 over a Sylow 2-subgroup S implies Ind V1 = Ind V2 over G."""

    name = "ind_res_sylow"
    identity = "Sylow induction-restriction"
    kind = PAIR
    DEFAULTS = {
        **{k: v for k, v in Check.DEFAULTS.items() if k != "groups"},
        "group": "S3",
        "subgroup": "sylow2",
    }

    def __init__(
        self,
        params: Optional[Dict[str, Any]] = None,
        seed: int = 42,
        budgets: Budgets = DEFAULT_BUDGETS,
    ):
        """Instantiate IndResSylowCheck; instances are spaces over the subgroup."""
        super().__init__(params, seed, budgets)
        self.group = resolve_group(str(self.params["group"]), budgets)
        self.subgroup = resolve_subgroup(self.group, str(self.params["subgroup"]), budgets)

    def generator(self) -> InstanceGenerator:
        """Generator over the subgroup S."""
        return InstanceGenerator(
            seed=self.seed,
            groups=[self.subgroup.as_group],
            primes=tuple(self.params["primes"]),
            max_dim=int(self.params["max_dim"]),
            epsilons=tuple(self.params["epsilons"]),
            strategies=tuple(self.params["strategies"]),
            budgets=self.budgets,
        )

    def hypothesis(self, instance: Instance) -> bool:
        """Res Ind V1 = Res Ind V2 over S."""
        V1, V2 = instance.spaces
        S = self.subgroup
        lhs = restrict(induce(S, V1), S)
        rhs = restrict(induce(S, V2), S)
        return self.decide(lhs, rhs).isometric

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """Ind V1 = Ind V2 over G."""
        V1, V2 = instance.spaces
        verdict = self.decide(induce(self.subgroup, V1), induce(self.subgroup, V2))
        return verdict.isometric, {
            "verdict": verdict.to_dict(),
            "group": self.group.name,
            "subgroup": list(self.subgroup.elements),
        }


class HyperbolicCheck(Check):
    """
    M = M' implies H(M) = H(M'), and (M, h) + (M, -h) = H(M).

    Instances are a space X and X written in another basis, so the two modules are
    isomorphic by construction.
    """

    name = "hyperbolic_props"
    identity = "hyperbolic spaces"
    kind = MODULE_PAIR

    def hypothesis(self, instance: Instance) -> bool:
        """The modules are isomorphic."""
        X, Y = instance.spaces
        return module_isomorphism(X.module, Y.module, self.budgets) is not None

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """H(M) = H(M') and X + (-X) = H(M)."""
        X, Y = instance.spaces
        eps = X.epsilon
        first = self.decide(hyperbolic(X.module, eps), hyperbolic(Y.module, eps))
        second = self.decide(orthogonal_sum(X, X.negate()), hyperbolic(X.module, eps))
        return first.isometric and second.isometric, {
            "modules": first.to_dict(),
            "space_form": second.to_dict(),
        }


CHECKS = {
    "cancellation": CancellationCheck,
    "div_odd": DivisionCheck,
    "odd_extension": OddExtensionCheck,
    "ind_res_sylow": IndResSylowCheck,
    "hyperbolic_props": HyperbolicCheck,
}


def run_check(
    kind: str,
    params: Optional[Dict[str, Any]] = None,
    seed: int = 42,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> CheckReport:
    """
    Run one property check, dispatched through ``CHECKS``.

    :param kind: Check name, one of ``CHECKS``.
    :param params: Check parameters (count, groups, primes, max_dim, ...).
    :param seed: Seed of the instance stream.
    :param budgets: Size limits.
    :return: CheckReport.
    """
    if kind not in CHECKS:
        raise SpecError(f"unknown check {kind!r}, expected one of {list(CHECKS)}")
    logging.info(f"Parsing {kind}")
    return CHECKS[kind](params, seed, budgets).run()
