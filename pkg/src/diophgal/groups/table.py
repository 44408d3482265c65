"""Finite groups given by multiplication tables.

Internally elements are 0-based indices and the identity is index 0; the
text format and user-facing diagnostics use the 1-based convention with the
identity at index 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from diophgal.errors import GroupValidationError, ParseError


@dataclass(frozen=True)
class GroupTable:
    """A validated group: ``rows[i][j] = r`` means sigma_i * sigma_j = sigma_r."""

    name: str
    rows: tuple
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.rows)

    @cached_property
    def table(self) -> np.ndarray:
        arr = np.array(self.rows, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]

    @cached_property
    def inverses(self) -> tuple:
        return tuple(row.index(0) for row in self.rows)

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.rows[x][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))

    def conjugate(self, x: int, tau: int) -> int:
        """tau^-1 * x * tau."""
        return self.rows[self.rows[self.inverses[tau]][x]][tau]

    def to_text(self) -> str:
        lines = [f"group {self.name} order {self.order}"]
        for row in self.rows:
            lines.append(" ".join(str(v + 1) for v in row))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"


def validate_group(raw, name: str = "G", *, one_based: bool = True) -> GroupTable:
    """Check the group axioms and build a :class:`GroupTable`.

    The first violated axiom is reported through
    :class:`GroupValidationError` with 0-based witnessing indices; checks
    run in the order shape, range, identity, Latin square, associativity,
    inverses.
    """
    rows = [list(r) for r in raw]
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        raise GroupValidationError("shape", (d,), "table is not a nonempty square array")
    try:
        t = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise GroupValidationError("range", (), f"non-integer entry: {exc}") from None
    if one_based:
        t = t - 1
    bad = np.argwhere((t < 0) | (t >= d))
    if len(bad):
        i, j = map(int, bad[0])
        raise GroupValidationError(
            "range", (i, j), f"entry ({i + 1},{j + 1}) is outside 1..{d}")
    ident = np.arange(d)
    if not np.array_equal(t[0], ident) or not np.array_equal(t[:, 0], ident):
        raise GroupValidationError(
            "identity", (0,), "row/column 1 is not the identity row/column")
    for i in range(d):
        if len(set(t[i].tolist())) != d:
            raise GroupValidationError("latin", ("row", i), f"row {i + 1} is not a permutation")
        if len(set(t[:, i].tolist())) != d:
            raise GroupValidationError(
                "latin", ("column", i), f"column {i + 1} is not a permutation")
    # (ij)k versus i(jk) for all triples at once
    left = t[t[:, :, None], np.arange(d)[None, None, :]]  # t[t[i,j], k]
    right = t[np.arange(d)[:, None, None], t[None, :, :]]  # t[i, t[j,k]]
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = map(int, bad[0])
        raise GroupValidationError(
            "associativity", (i, j, k),
            f"associativity fails at ({i + 1},{j + 1},{k + 1})")
    for i in range(d):
        r = np.flatnonzero(t[i] == 0)
        if not len(r) or t[int(r[0]), i] != 0:
            raise GroupValidationError("inverse", (i,), f"element {i + 1} has no inverse")
    return GroupTable(name, tuple(tuple(int(v) for v in row) for row in t))


def parse_group_text(text: str) -> GroupTable:
    """Read ``group <name> order <d>`` followed by ``d`` rows of 1-based indices."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty group file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "group" or head[2] != "order":
        raise ParseError(f"bad group header {lines[0]!r}")
    name = head[1]
    try:
        d = int(head[3])
        rows = [[int(tok) for tok in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token in group file: {exc}") from None
    if d < 1 or len(rows) != d:
        raise ParseError(f"expected {d} table rows, found {len(rows)}")
    return validate_group(rows, name)


def load_group(path: str | Path) -> GroupTable:
    return parse_group_text(Path(path).read_text())
