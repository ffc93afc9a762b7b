"""The group catalog and resolution of group references."""

import logging
from dataclasses import replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, Union

from gtrace.config import DEFAULT_BUDGETS, DEFAULT_CATALOG_YAML, Budgets, parse_catalog
from gtrace.errors import SpecError
from gtrace.groups.finite_group import FiniteGroup, build_group, parse_group_description
from gtrace.groups.subgroups import (
    SubgroupRef,
    subgroup_classes,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)


@lru_cache(maxsize=8)
def load_catalog(yaml_file: Union[str, Path, None] = None) -> Dict[str, str]:
    """Cached :func:`gtrace.config.parse_catalog`."""
    return parse_catalog(yaml_file or DEFAULT_CATALOG_YAML)


@lru_cache(maxsize=None)
def named_group(name: str, description: str, budgets: Budgets = DEFAULT_BUDGETS) -> FiniteGroup:
    """Build a group from its description, keeping ``name`` when the description has none."""
    desc = parse_group_description(description)
    if desc.name is None:
        desc = replace(desc, name=name)
    return build_group(desc, budgets)


def catalog_group(
    name: str, yaml_file: Union[str, Path, None] = None, budgets: Budgets = DEFAULT_BUDGETS
) -> FiniteGroup:
    """
    A catalog group by name.

    :param name: Catalog entry name such as ``S3``.
    :param yaml_file: Catalog YAML, defaults to catalog.yaml at the repo root.
    :param budgets: Size limits.
    """
    catalog = load_catalog(yaml_file)
    if name not in catalog:
        raise SpecError(f"{name!r} is not in the group catalog ({', '.join(catalog)})")
    return named_group(name, catalog[name], budgets)


def resolve_group(ref: str, budgets: Budgets = DEFAULT_BUDGETS) -> FiniteGroup:
    """
    Resolve a group reference: a ``.grp`` file, a catalog name or an inline description.

    :param ref: Path, catalog name (``S3``) or description (``named: D 5``).
    :param budgets: Size limits.
    """
    ref = ref.strip()
    path = Path(ref)
    if path.suffix == ".grp":
        if not path.exists():
            raise SpecError(f"group file {ref} does not exist")
        logging.info(f"Reading group file {ref}")
        return named_group(path.stem, path.read_text(), budgets)
    catalog = load_catalog()
    if ref in catalog:
        return named_group(ref, catalog[ref], budgets)
    return named_group(ref, ref, budgets)


def resolve_subgroup(G: FiniteGroup, ref: str, budgets: Budgets = DEFAULT_BUDGETS) -> SubgroupRef:
    """
    Resolve a subgroup reference inside G.

    Accepted: ``sylow<p>`` (``sylow2``), ``trivial``, ``whole``, ``class:<i>`` (representative
    of the i-th subgroup class) and ``elements: a b c`` (element indices).

    :param G: Parent group.
    :param ref: Reference text.
    :param budgets: Size limits.
    """
    ref = ref.strip().lower()
    if ref.startswith("sylow"):
        try:
            prime = int(ref[len("sylow"):] or 2)
        except ValueError as err:
            raise SpecError(f"bad Sylow reference {ref!r}") from err
        return sylow_subgroup(G, prime, budgets)
    if ref == "trivial":
        return trivial_subgroup(G)
    if ref == "whole":
        return whole_group(G)
    key, _, value = ref.partition(":")
    if key == "class":
        table = subgroup_classes(G, budgets)
        i = int(value)
        if not 0 <= i < len(table):
            raise SpecError(f"subgroup class {i} out of range 0..{len(table) - 1}")
        return table[i].representative
    if key == "elements":
        return SubgroupRef(G, tuple(sorted({0} | {int(tok) for tok in value.split()})))
    raise SpecError(f"unknown subgroup reference {ref!r}")
