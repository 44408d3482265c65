"""Subgroups, conjugacy classes of subgroups and injective homomorphisms."""

from __future__ import annotations

from dataclasses import dataclass

from diophgal.errors import CapExceeded, ContractViolation
from diophgal.groups.table import GroupTable

DEFAULT_MAX_GROUP_ORDER = 24
DEFAULT_MAX_SUBGROUP_ORDER = 12


@dataclass(frozen=True)
class SubgroupRef:
    parent: GroupTable
    elements: tuple  # sorted 0-based indices, always containing 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def is_subgroup(g: GroupTable, elements) -> bool:
    s = set(elements)
    if 0 not in s:
        return False
    return all(g.mul(a, b) in s for a in s for b in s) and all(g.inverse(a) in s for a in s)


def make_subgroup(g: GroupTable, elements) -> SubgroupRef:
    elems = tuple(sorted(set(elements)))
    if not is_subgroup(g, elems):
        raise ContractViolation(f"{elems} is not a subgroup of {g.name}")
    return SubgroupRef(g, elems)


def closure(g: GroupTable, generators) -> frozenset:
    """Smallest subgroup containing ``generators``."""
    elems = {0}
    frontier = [0]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def all_subgroups(g: GroupTable) -> list[frozenset]:
    """Every subgroup, found by joining cyclic subgroups until nothing new appears."""
    if "subgroups" in g._cache:
        return g._cache["subgroups"]
    cyclic = {closure(g, [x]) for x in range(g.order)}
    found = set(cyclic) | {frozenset({0})}
    frontier = list(found)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = closure(g, h | c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    result = sorted(found, key=lambda s: (len(s), sorted(s)))
    g._cache["subgroups"] = result
    return result


def subgroups_of_order(g: GroupTable, m: int, *, max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
                       max_subgroup_order: int = DEFAULT_MAX_SUBGROUP_ORDER) -> list[SubgroupRef]:
    """All subgroups of order ``m`` in canonical (sorted element tuple) order."""
    if m < 1:
        raise ContractViolation("subgroup order must be positive")
    if g.order > max_group_order:
        raise CapExceeded(f"group order {g.order} exceeds cap {max_group_order}",
                          g.order, max_group_order)
    if m > max_subgroup_order:
        raise CapExceeded(f"subgroup order {m} exceeds cap {max_subgroup_order}",
                          m, max_subgroup_order)
    if g.order % m:
        return []
    subs = [tuple(sorted(s)) for s in all_subgroups(g) if len(s) == m]
    return [SubgroupRef(g, s) for s in sorted(subs)]


def conjugate_subgroup(g: GroupTable, s: SubgroupRef, tau: int) -> SubgroupRef:
    return SubgroupRef(g, tuple(sorted(g.conjugate(x, tau) for x in s.elements)))


def conjugates_of_subgroup(g: GroupTable, s: SubgroupRef) -> tuple[int, list[SubgroupRef]]:
    """The orbit {tau^-1 S tau} (deduplicated, sorted) and its size."""
    orbit = sorted({conjugate_subgroup(g, s, tau).elements for tau in range(g.order)})
    return len(orbit), [SubgroupRef(g, e) for e in orbit]


def normalizer(g: GroupTable, s: SubgroupRef) -> SubgroupRef:
    return SubgroupRef(g, tuple(tau for tau in range(g.order)
                                if conjugate_subgroup(g, s, tau).elements == s.elements))


def enumerate_injections(h: GroupTable, g: GroupTable) -> list[tuple]:
    """Injective homomorphisms H -> G as image tuples of H's elements 1..r-1.

    The identity always maps to the identity, so it is omitted. Output is in
    lexicographic order of the image tuples.
    """
    r = h.order
    if g.order % r:
        return []
    results: list[tuple] = []
    phi = [0] * r

    def consistent(upto: int) -> bool:
        # every product whose three indices are already assigned must match
        for a in range(upto + 1):
            for b in range(upto + 1):
                c = h.mul(a, b)
                if c <= upto and g.mul(phi[a], phi[b]) != phi[c]:
                    return False
        return True

    used = {0}

    def extend(k: int) -> None:
        if k == r:
            results.append(tuple(phi[1:]))
            return
        for img in range(1, g.order):
            if img in used:
                continue
            phi[k] = img
            if consistent(k):
                used.add(img)
                extend(k + 1)
                used.discard(img)
        phi[k] = 0

    extend(1)
    return results

