"""Emitted polynomial systems and their bit-exact text format.

File layout::

    diophsys v1
    ring <ring spec>
    var <name> <role>                       one per registry entry, in order
    eq <polynomial>                         asserted = 0
    neq <p1> ; <p2> != <q1> ; <q2>          tuple disequation (before encoding)
    pred irreducible d=<d> vars=<v1,v2,...>
    pred nonzero vars=<v1,...> expr=<polynomial>
    provenance <pass1,pass2,...>
"""

from __future__ import annotations

from dataclasses import dataclass, field

from diophgal.algebra.multipoly import MultiPoly, Registry, parse_poly
from diophgal.algebra.ring import RingDescriptor
from diophgal.errors import ParseError, StructuralError

HEADER = "diophsys v1"


@dataclass(frozen=True)
class PredicateConstraint:
    """A named side condition.

    ``irreducible``: ``args`` are the ``d*n`` coefficient variables
    ``a[i][j]`` (i-major) of the monic degree-``d`` polynomial
    ``x^d + sum_i (sum_j a[i][j] alpha^j) x^i``, which must be irreducible
    over L. ``nonzero``: ``expr`` must not vanish; ``args`` lists its
    variables.
    """

    kind: str
    args: tuple
    degree: int = 0
    expr: MultiPoly | None = None

    def __post_init__(self):
        if self.kind not in ("irreducible", "nonzero"):
            raise StructuralError(f"unknown predicate kind {self.kind!r}")
        if self.kind == "nonzero" and self.expr is None:
            raise StructuralError("nonzero predicate needs an expression")

    def to_text(self) -> str:
        if self.kind == "irreducible":
            return f"pred irreducible d={self.degree} vars={','.join(self.args)}"
        return f"pred nonzero vars={','.join(self.args)} expr={self.expr.to_text()}"


@dataclass(frozen=True)
class Disequation:
    """``lhs != rhs`` as tuples: holds iff some coordinate differs."""

    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        if len(self.lhs) != len(self.rhs) or not self.lhs:
            raise StructuralError("disequation sides must be nonempty and of equal length")

    def differences(self) -> list[MultiPoly]:
        return [a - b for a, b in zip(self.lhs, self.rhs)]

    def to_text(self) -> str:
        left = " ; ".join(p.to_text() for p in self.lhs)
        right = " ; ".join(p.to_text() for p in self.rhs)
        return f"neq {left} != {right}"


@dataclass
class DiophSystem:
    """Variables, equations, disequations and predicates over one ring.

    ``definitions`` records how auxiliary and inverse-witness variables are
    derived from earlier ones: ``("value", expr)``, ``("inverse", expr)`` or
    ``("odd-3-split", x, v_name, w_name)`` for the integer nonzero gadget,
    so witnesses can be completed; it is not part of the text format.
    """

    ring: RingDescriptor
    registry: Registry
    equations: list = field(default_factory=list)
    disequations: list = field(default_factory=list)
    predicates: list = field(default_factory=list)
    provenance: list = field(default_factory=list)
    definitions: dict = field(default_factory=dict)

    @property
    def domain(self):
        return self.ring.domain

    @property
    def variables(self) -> list[str]:
        return self.registry.names

    def poly(self, text: str) -> MultiPoly:
        return parse_poly(text, self.registry, self.domain)

    def var(self, name: str) -> MultiPoly:
        return MultiPoly.variable(self.registry, self.domain, name)

    def copy(self, *, registry: Registry | None = None) -> "DiophSystem":
        """Shallow copy; with ``registry`` every polynomial is re-expressed over it."""
        if registry is None:
            return DiophSystem(self.ring, self.registry, list(self.equations),
                               list(self.disequations), list(self.predicates),
                               list(self.provenance), dict(self.definitions))

        def rb(p):
            return p.rebase(registry) if p is not None else None

        return DiophSystem(
            self.ring, registry,
            [rb(p) for p in self.equations],
            [Disequation(tuple(rb(p) for p in d.lhs), tuple(rb(p) for p in d.rhs))
             for d in self.disequations],
            [PredicateConstraint(pr.kind, pr.args, pr.degree, rb(pr.expr)) for pr in self.predicates],
            list(self.provenance),
            {k: (kind, rb(e), *extra) for k, (kind, e, *extra) in self.definitions.items()
             if k in registry},
        )

    def extended(self) -> "DiophSystem":
        """Copy with a private registry so new variables can be appended safely."""
        reg = self.registry.copy()
        out = self.copy()
        out.registry = reg
        repoint = lambda p: MultiPoly(reg, p.domain, p.terms, normalized=True) if p is not None else None  # noqa: E731
        out.equations = [repoint(p) for p in out.equations]
        out.disequations = [Disequation(tuple(map(repoint, d.lhs)), tuple(map(repoint, d.rhs)))
                            for d in out.disequations]
        out.predicates = [PredicateConstraint(p.kind, p.args, p.degree, repoint(p.expr))
                          for p in out.predicates]
        out.definitions = {k: (kind, repoint(e), *extra)
                           for k, (kind, e, *extra) in out.definitions.items()}
        return out

    def check(self) -> None:
        """Every equation's variables must be registered."""
        for p in self.equations:
            if p.registry is not self.registry:
                raise StructuralError("equation built over a foreign registry")

    # -- serialization ------------------------------------------------
    def to_text(self) -> str:
        lines = [HEADER, f"ring {self.ring.spec()}"]
        lines += [f"var {v.name} {v.role}" for v in self.registry]
        lines += [f"eq {p.to_text()}" for p in self.equations]
        lines += [d.to_text() for d in self.disequations]
        lines += [p.to_text() for p in self.predicates]
        lines.append(f"provenance {','.join(self.provenance)}")
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        terms = sum(len(p) for p in self.equations)
        return (f"{len(self.registry)} variables, {len(self.equations)} equations "
                f"({terms} terms), {len(self.disequations)} disequations, "
                f"{len(self.predicates)} predicates")


def parse_system(text: str) -> DiophSystem:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ParseError(f"missing {HEADER!r} header")
    if len(lines) < 2 or not lines[1].startswith("ring "):
        raise ParseError("second line must be the ring line")
    ring = RingDescriptor.parse(lines[1][5:])
    reg = Registry()
    dom = ring.domain
    sys = DiophSystem(ring, reg)
    saw_provenance = False
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        if saw_provenance:
            raise ParseError(f"line {lineno}: content after provenance line")
        kind, _, rest = line.partition(" ")
        try:
            if kind == "var":
                name, _, role = rest.partition(" ")
                reg.add(name, role)
            elif kind == "eq":
                sys.equations.append(parse_poly(rest, reg, dom))
            elif kind == "neq":
                left, sep, right = rest.partition(" != ")
                if not sep:
                    raise ParseError("neq line needs ' != '")
                lhs = tuple(parse_poly(t, reg, dom) for t in left.split(" ; "))
                rhs = tuple(parse_poly(t, reg, dom) for t in right.split(" ; "))
                sys.disequations.append(Disequation(lhs, rhs))
            elif kind == "pred":
                sys.predicates.append(_parse_predicate(rest, reg, dom))
            elif kind == "provenance":
                sys.provenance = [p for p in rest.split(",") if p]
                saw_provenance = True
            else:
                raise ParseError(f"unknown line kind {kind!r}")
        except StructuralError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not saw_provenance:
        raise ParseError("missing trailing provenance line")
    return sys


def _parse_predicate(rest: str, reg: Registry, dom) -> PredicateConstraint:
    kind, _, body = rest.partition(" ")
    if kind == "irreducible":
        opts = dict(tok.split("=", 1) for tok in body.split())
        args = tuple(a for a in opts.get("vars", "").split(",") if a)
        for a in args:
            reg.index(a)
        return PredicateConstraint("irreducible", args, int(opts["d"]))
    if kind == "nonzero":
        head, sep, expr = body.partition(" expr=")
        if not sep or not head.startswith("vars="):
            raise ParseError("nonzero predicate needs vars= and expr=")
        args = tuple(a for a in head[5:].split(",") if a)
        return PredicateConstraint("nonzero", args, 0, parse_poly(expr, reg, dom))
    raise ParseError(f"unknown predicate {kind!r}")
