"""Configuration: default budgets and YAML config loading."""

from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from gtrace.errors import BudgetExceededError, SpecError

MAX_GROUP_ORDER = 10000
MAX_SUBGROUP_ORDER = 120
MAX_FIELD_SIZE = 2**20
ENUMERATION_BUDGET = 2**24
MAX_BURNSIDE_CLASSES = 20
MAX_TABLE_ORDER = 256

ROOT_DIR = Path(__file__).parent.parent
DEFAULT_SUITE_YAML = ROOT_DIR / "suite.yaml"
DEFAULT_CATALOG_YAML = ROOT_DIR / "catalog.yaml"


@dataclass(frozen=True)
class Budgets:
    """Size limits applied by every operation that enumerates."""

    max_group_order: int = MAX_GROUP_ORDER
    max_subgroup_order: int = MAX_SUBGROUP_ORDER
    max_field_size: int = MAX_FIELD_SIZE
    enumeration: int = ENUMERATION_BUDGET
    max_burnside_classes: int = MAX_BURNSIDE_CLASSES
    max_table_order: int = MAX_TABLE_ORDER

    def check(self, bound: str, value: int) -> None:
        """
        Raise when value exceeds the named bound.

        :param bound: Attribute name of the bound.
        :param value: Requested size.
        """
        limit = getattr(self, bound)
        if value > limit:
            raise BudgetExceededError(bound, value, limit)

    def with_enumeration(self, enumeration: Optional[int]) -> "Budgets":
        """Return a copy with the enumeration budget overridden (None keeps it)."""
        if enumeration is None:
            return self
        return replace(self, enumeration=enumeration)


DEFAULT_BUDGETS = Budgets()


@dataclass
class SuiteConfig:
    """Parsed suite.yaml."""

    seed: int = 42
    seeds: List[int] = field(default_factory=lambda: [42])
    budgets: Budgets = DEFAULT_BUDGETS
    catalog: List[str] = field(default_factory=list)
    checks: List[Dict[str, Any]] = field(default_factory=list)
    burnside: Dict[str, Any] = field(default_factory=dict)
    processes: int = 1

    def to_dict(self) -> Dict[str, Any]:
        """Plain-data view, used to echo the configuration into reports."""
        out = asdict(self)
        return out


def parse_load_config(yaml_file: Union[str, Path]) -> Dict:
    """
    Parse a YAML config file.

    :param yaml_file: A string pointing to a config YAML.
    :return: Dict: The config as a dictionary.
    """
    with open(yaml_file) as yamlf:
        config = yaml.safe_load(yamlf)
    return config or {}


def parse_budgets(raw: Optional[Dict[str, Any]]) -> Budgets:
    """
    Merge a ``budgets:`` mapping over the defaults.

    :param raw: Mapping of bound name to integer, may be None.
    :return: Budgets instance.
    """
    if not raw:
        return DEFAULT_BUDGETS
    known = set(asdict(DEFAULT_BUDGETS))
    unknown = set(raw) - known
    if unknown:
        raise SpecError(f"unknown budget keys: {sorted(unknown)}")
    return replace(DEFAULT_BUDGETS, **{k: int(v) for k, v in raw.items()})


def parse_suite_config(yaml_file: Union[str, Path, None] = None) -> SuiteConfig:
    """
    Load suite.yaml, merging its values over the defaults.

    :param yaml_file: Path to the suite YAML, defaults to suite.yaml at the repo root.
    :return: SuiteConfig.
    """
    raw = parse_load_config(yaml_file or DEFAULT_SUITE_YAML)
    seeds = raw.get("seeds") or [raw.get("seed", 42)]
    return SuiteConfig(
        seed=int(raw.get("seed", seeds[0])),
        seeds=[int(s) for s in seeds],
        budgets=parse_budgets(raw.get("budgets")),
        catalog=list(raw.get("catalog") or []),
        checks=list(raw.get("checks") or []),
        burnside=dict(raw.get("burnside") or {}),
        processes=int(raw.get("processes", 1)),
    )


def parse_catalog(yaml_file: Union[str, Path, None] = None) -> Dict[str, str]:
    """
    Load the group catalog.

    :param yaml_file: Path to the catalog YAML, defaults to catalog.yaml at the repo root.
    :return: Ordered mapping of catalog name to group description.
    """
    raw = parse_load_config(yaml_file or DEFAULT_CATALOG_YAML)
    catalog = {}
    for entry in raw.get("groups", []):
        if "name" not in entry or "group" not in entry:
            raise SpecError(f"catalog entry needs 'name' and 'group': {entry}")
        catalog[str(entry["name"])] = str(entry["group"])
    return catalog
