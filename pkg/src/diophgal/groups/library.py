"""The bundled group tables and the constructions that generate them.

Tables ship as ``.grp`` files under ``diophgal/data/groups``; the builders
here regenerate them (``python -m diophgal.groups.library``) and back the
consistency test between code and data.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import permutations, product

from diophgal.groups.table import GroupTable, parse_group_text, validate_group

LIBRARY_NAMES = tuple(f"C{n}" for n in range(1, 13)) + ("S3", "D4", "Q8", "C2xC2", "A4", "D6")


def _from_elements(name: str, elements: list, op) -> GroupTable:
    index = {e: i for i, e in enumerate(elements)}
    rows = [[index[op(a, b)] for b in elements] for a in elements]
    return validate_group(rows, name, one_based=False)


def cyclic(n: int) -> GroupTable:
    return _from_elements(f"C{n}", list(range(n)), lambda a, b: (a + b) % n)


def _compose(p, q):
    # (p*q)(x) = p(q(x))
    return tuple(p[q[x]] for x in range(len(q)))


def _parity(p) -> int:
    seen, sign = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign += length - 1
    return sign % 2


def symmetric3() -> GroupTable:
    return _from_elements("S3", sorted(permutations(range(3))), _compose)


def alternating4() -> GroupTable:
    elems = sorted(p for p in permutations(range(4)) if _parity(p) == 0)
    return _from_elements("A4", elems, _compose)


def dihedral(k: int, name: str) -> GroupTable:
    """Symmetries of a regular k-gon (order 2k) as permutations of its vertices."""
    rots = [tuple((x + s) % k for x in range(k)) for s in range(k)]
    refl = [tuple((s - x) % k for x in range(k)) for s in range(k)]
    return _from_elements(name, sorted(rots + refl), _compose)


def quaternion8() -> GroupTable:
    # units (sign, axis) with axis in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def op(a, b):
        s, ax = table[(a[1], b[1])]
        return (a[0] * b[0] * s, ax)

    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    return _from_elements("Q8", elems, op)


def klein4() -> GroupTable:
    elems = list(product(range(2), repeat=2))
    return _from_elements("C2xC2", elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))


def build(name: str) -> GroupTable:
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    builders = {
        "S3": symmetric3,
        "D4": lambda: dihedral(4, "D4"),
        "Q8": quaternion8,
        "C2xC2": klein4,
        "A4": alternating4,
        "D6": lambda: dihedral(6, "D6"),
    }
    if name not in builders:
        raise KeyError(f"no builder for group {name!r}")
    return builders[name]()


@lru_cache(maxsize=None)
def library_group(name: str) -> GroupTable:
    """Load a bundled table by name (e.g. ``"S3"``, ``"C2xC2"``)."""
    data = resources.files("diophgal.data.groups").joinpath(f"{name}.grp")
    return parse_group_text(data.read_text())


def library() -> dict[str, GroupTable]:
    return {name: library_group(name) for name in LIBRARY_NAMES}


if __name__ == "__main__":
    import sys
    from pathlib import Path

    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "data" / "groups"
    out.mkdir(parents=True, exist_ok=True)
    for n in LIBRARY_NAMES:
        (out / f"{n}.grp").write_text(build(n).to_text())
