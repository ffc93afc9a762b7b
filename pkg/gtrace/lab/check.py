"""Check utility module."""

import logging
import time
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from gtrace.catalog import resolve_group
from gtrace.config import DEFAULT_BUDGETS, Budgets
from gtrace.errors import BudgetExceededError, SpecError
from gtrace.forms.constructions import hyperbolic, orthogonal_sum
from gtrace.forms.isometry import AUTO, IsometryVerdict, is_isometric
from gtrace.forms.space import EquivariantSpace, ModuleRep, make_space
from gtrace.lab.generator import PAIR, STRATEGIES, Instance, InstanceGenerator
from gtrace.report import CheckReport


def corrupt(X: EquivariantSpace) -> EquivariantSpace:
    """X with one extra trivial summand: <1> for eps = +1, H(1) for eps = -1."""
    if X.epsilon == 1:
        pad = make_space(X.field, X.group, 1, np.ones((1, 1), dtype=np.int64))
    else:
        pad = hyperbolic(ModuleRep.trivial(X.field, X.group, 1), -1)
    return orthogonal_sum(X, pad)


class Check:
    """
    Parent class for property checks over a seeded instance stream.

    A subclass names the instance kind it consumes, evaluates a hypothesis and,
    when it holds, the conclusion. Instances whose hypothesis fails are counted as
    vacuous and those whose decisions exceed the budgets as skipped.
    """

    name = "check"
    identity = "conclusion"
    kind = PAIR
    DEFAULTS: Dict[str, Any] = {
        "count": 20,
        "groups": ["C2"],
        "primes": [3],
        "max_dim": 2,
        "epsilons": [1],
        "strategies": list(STRATEGIES),
        "min_nonvacuous": 0,
        "negative_control": False,
    }

    def __init__(
        self,
        params: Optional[Dict[str, Any]] = None,
        seed: int = 42,
        budgets: Budgets = DEFAULT_BUDGETS,
    ):
        """
        Instantiate Check.

        :param params: Overrides of ``DEFAULTS``; unknown keys are rejected.
        :param seed: Seed of the instance stream.
        :param budgets: Size limits for every isometry decision.
        """
        params = dict(params or {})
        params.pop("kind", None)
        unknown = set(params) - set(self.DEFAULTS)
        if unknown:
            raise SpecError(f"unknown parameters for {self.name}: {sorted(unknown)}")
        self.params = {**self.DEFAULTS, **params}
        self.seed = seed
        self.budgets = budgets
        self.report = CheckReport(self.name, params={**self.params, "seed": seed})

    def generator(self) -> InstanceGenerator:
        """The instance generator described by the parameters."""
        return InstanceGenerator(
            seed=self.seed,
            groups=[resolve_group(g, self.budgets) for g in self.params["groups"]],
            primes=tuple(self.params["primes"]),
            max_dim=int(self.params["max_dim"]),
            epsilons=tuple(self.params["epsilons"]),
            strategies=tuple(self.params["strategies"]),
            budgets=self.budgets,
        )

    def instances(self) -> Iterator[Instance]:
        """The instance stream."""
        return self.generator().generate(self.kind, int(self.params["count"]))

    def decide(self, X: EquivariantSpace, Y: EquivariantSpace) -> IsometryVerdict:
        """Isometry decision with both backends when Hom fits the budget."""
        return is_isometric(X, Y, AUTO, self.budgets)

    def hypothesis(self, instance: Instance) -> bool:
        """Whether the conclusion is asserted for this instance."""
        return True

    def conclusion(self, instance: Instance) -> Tuple[bool, Dict[str, Any]]:
        """The asserted statement and details recorded with a failure."""
        raise NotImplementedError

    def corrupted(self, instance: Instance) -> Instance:
        """The negative control: the second space gets an extra summand."""
        spaces = list(instance.spaces)
        spaces[1] = corrupt(spaces[1])
        return Instance(instance.index, f"{instance.strategy}+corrupted", tuple(spaces))

    def run(self) -> CheckReport:
        """
        Run the check over the whole stream.

        :return: CheckReport with attempted, nonvacuous, vacuous, passed and skipped counts.
        """
        logging.info(f"Running {self.name} with seed {self.seed}")
        report = self.report
        start = time.perf_counter()
        for instance in self.instances():
            report.attempted += 1
            try:
                if not self.hypothesis(instance):
                    report.vacuous += 1
                    continue
                if self.params["negative_control"]:
                    instance = self.corrupted(instance)
                holds, details = self.conclusion(instance)
            except BudgetExceededError as err:
                logging.warning(f"{self.name}: instance {instance.index} skipped, {err}")
                report.skipped += 1
                continue
            report.nonvacuous += 1
            if holds:
                report.passes += 1
            else:
                logging.error(f"{self.name}: {self.identity} failed on instance {instance.index}")
                report.record_failure(self.identity, {"instance": instance.to_dict(), **details})
        minimum = int(self.params["min_nonvacuous"])
        if report.nonvacuous < minimum:
            report.record_failure(
                "minimum nonvacuous count", {"nonvacuous": report.nonvacuous, "minimum": minimum}
            )
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
        logging.info(
            f"Finished {self.name}: {report.nonvacuous}/{report.attempted} nonvacuous, "
            f"{len(report.failures)} failures, "
            f"{report.vacuous} vacuous, {report.skipped} skipped"
        )
        return report
