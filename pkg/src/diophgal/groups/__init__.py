"""Finite groups from multiplication tables."""

from diophgal.groups.library import LIBRARY_NAMES, library, library_group
from diophgal.groups.subgroups import (
    SubgroupRef,
    all_subgroups,
    conjugates_of_subgroup,
    enumerate_injections,
    make_subgroup,
    normalizer,
    subgroups_of_order,
)
from diophgal.groups.table import GroupTable, load_group, parse_group_text, validate_group

__all__ = [
    "GroupTable",
    "LIBRARY_NAMES",
    "SubgroupRef",
    "all_subgroups",
    "conjugates_of_subgroup",
    "enumerate_injections",
    "library",
    "library_group",
    "load_group",
    "make_subgroup",
    "normalizer",
    "parse_group_text",
    "subgroups_of_order",
    "validate_group",
]
