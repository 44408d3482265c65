"""Witness files and completion of derived variables.

Format::

    witness v1
    <name> = <numerator>/<denominator>
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from diophgal.algebra.domain import Domain
from diophgal.encoder.system import DiophSystem
from diophgal.errors import CoverageError, ParseError

HEADER = "witness v1"


@dataclass
class Witness:
    values: dict = field(default_factory=dict)

    def __getitem__(self, name: str):
        return self.values[name]

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def missing(self, system: DiophSystem) -> list:
        return [n for n in system.variables if n not in self.values]

    def restricted(self, names) -> "Witness":
        return Witness({n: self.values[n] for n in names if n in self.values})

    def to_text(self, order=None) -> str:
        names = list(order) if order is not None else list(self.values)
        lines = [HEADER]
        for n in names:
            v = Fraction(self.values[n])
            lines.append(f"{n} = {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"


def parse_witness(text: str, domain: Domain | None = None) -> Witness:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != HEADER:
        raise ParseError(f"witness must start with {HEADER!r}")
    values = {}
    for ln in lines[1:]:
        name, eq, val = ln.partition("=")
        name, val = name.strip(), val.strip()
        if not eq or not name or not val:
            raise ParseError(f"malformed witness line {ln!r}")
        if name in values:
            raise ParseError(f"variable {name!r} assigned twice")
        try:
            num, _, den = val.partition("/")
            v = Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad value in {ln!r}") from exc
        values[name] = domain.coerce(v) if domain is not None else (
            v.numerator if v.denominator == 1 else v)
    return Witness(values)


def odd_three_split(x: int) -> tuple:
    """``(u, v, w)`` with ``x*u = (2v - 1)(3w - 1)`` for a nonzero integer ``x``."""
    x = int(x)
    if x == 0:
        return 0, 0, 0
    a, rest = 0, abs(x)
    while rest % 2 == 0:
        rest //= 2
        a += 1
    odd = rest
    two = 2 ** a if (2 ** a) % 3 == 2 else -(2 ** a)
    u = odd * two // x
    return u, (odd + 1) // 2, (two + 1) // 3


def complete_witness(system: DiophSystem, partial: Witness | dict) -> Witness:
    """Fill in auxiliary and inverse-witness variables from their definitions.

    Values already present are kept. Definitions are processed in registry
    order, which is creation order, so each one only reads earlier values.
    An inverse witness of a vanishing expression is set to 0 (any value
    fails the same way). Raises :class:`CoverageError` when a variable
    without a definition is unassigned.
    """
    dom = system.domain
    values = dict(partial.values if isinstance(partial, Witness) else partial)
    values = {k: dom.coerce(v) for k, v in values.items()}
    defs = system.definitions
    split_parts = {}
    for name in system.variables:
        if name in values:
            continue
        if name in split_parts:
            values[name] = split_parts.pop(name)
            continue
        if name not in defs:
            raise CoverageError(f"witness assigns no value to {name!r}")
        kind, expr, *extra = defs[name]
        v = expr.evaluate(values)
        if kind == "value":
            values[name] = v
        elif kind == "inverse":
            values[name] = dom.inverse(v) if v != 0 else 0
        elif kind == "odd-3-split":
            u, vv, ww = odd_three_split(v)
            values[name] = u
            split_parts[extra[0]], split_parts[extra[1]] = vv, ww
        else:
            raise CoverageError(f"unknown definition kind {kind!r} for {name!r}")
    return Witness(values)
