"""Rewriting passes over :class:`DiophSystem`.

Each pass returns a new system and appends its label to the provenance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from diophgal.algebra.domain import Domain
from diophgal.algebra.multipoly import MultiPoly, Registry
from diophgal.algebra.quotient import reduce_mod_monic
from diophgal.encoder.system import Disequation, DiophSystem, PredicateConstraint
from diophgal.errors import CapExceeded, ContractViolation, StructuralError

# ---------------------------------------------------------------- ZeroForm


def least_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(g for g in range(2, p) if g not in squares)


@dataclass(frozen=True)
class ZeroForm:
    """Binary quadratic form ``a*u^2 + b*u*v + c*v^2`` used to merge two equations."""

    domain: Domain
    a: int = 1
    b: int = 0
    c: int = 1

    def __post_init__(self):
        if self.domain.is_prime_field and not self.is_anisotropic():
            raise ContractViolation(f"{self.text()} has a nontrivial zero over {self.domain}")

    @classmethod
    def default(cls, domain: Domain) -> "ZeroForm":
        if not domain.is_prime_field:
            return cls(domain, 1, 0, 1)
        p = domain.p
        if p == 2:
            return cls(domain, 1, 1, 1)
        return cls(domain, 1, 0, -least_nonresidue(p))

    def is_anisotropic(self) -> bool:
        dom = self.domain
        if dom.is_prime_field:
            p = dom.p
            a, b, c = (dom.coerce(x) for x in (self.a, self.b, self.c))
            # homogeneous: a zero with v != 0 scales to v = 1; with v = 0 it needs a = 0
            if a == 0:
                return False
            return all((a * u * u + b * u + c) % p for u in range(p))
        disc = Fraction(self.b * self.b - 4 * self.a * self.c)
        if self.a == 0:
            return False
        if disc < 0:
            return True
        return not (_is_square(disc.numerator) and _is_square(disc.denominator))

    def __call__(self, u: MultiPoly, v: MultiPoly) -> MultiPoly:
        out = u * u * self.a
        if self.b:
            out = out + u * v * self.b
        return out + v * v * self.c

    def text(self) -> str:
        return f"{self.a}*u^2 + {self.b}*u*v + {self.c}*v^2"


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r * r == n


# ---------------------------------------------------------------- helpers

def fresh_index(registry: Registry, stem: str) -> int:
    """Smallest k such that ``stem[k]`` (and ``stem[k][...]``) is unused."""
    pat = re.compile(re.escape(stem) + r"\[(\d+)\]")
    used = [int(m.group(1)) for name in registry.names if (m := pat.match(name))]
    return max(used, default=-1) + 1


def transplant(poly: MultiPoly, registry: Registry, mapping: dict) -> MultiPoly:
    """Rewrite ``poly`` over ``registry``, sending its variable indices to polynomials."""
    dom = poly.domain
    acc = MultiPoly.zero(registry, dom)
    cache: dict = {}
    for m, c in poly.terms.items():
        term = MultiPoly.constant(registry, dom, c)
        for v, e in m:
            key = (v, e)
            if key not in cache:
                cache[key] = mapping[v] ** e
            term = term * cache[key]
        acc = acc + term
    return acc


def _dedupe(polys) -> list:
    seen, out = set(), []
    for p in polys:
        if p.is_zero():
            continue
        key = frozenset(p.terms.items())
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


# ---------------------------------------------------------------- passes

def encode_disequation(system: DiophSystem) -> DiophSystem:
    """Turn every disequation into equations with inverse witnesses.

    Over a field a tuple disequation becomes ``prod_j (w_j*(a_j - b_j) - 1) = 0``;
    over Z a ``nonzero`` predicate on ``sum_j (a_j - b_j)^2`` is emitted instead.
    """
    out = system.extended()
    reg, dom = out.registry, out.domain
    k = fresh_index(reg, "w")
    for dq in out.disequations:
        diffs = [d for d in dq.differences() if not d.is_zero()]
        if not diffs:
            out.equations.append(MultiPoly.constant(reg, dom, 1))
            continue
        if not dom.is_field:
            expr = diffs[0] * diffs[0]
            for d in diffs[1:]:
                expr = expr + d * d
            out.predicates.append(PredicateConstraint("nonzero", tuple(expr.variables()), 0, expr))
            continue
        prod = MultiPoly.constant(reg, dom, 1)
        for d in diffs:
            name = f"w[{k}]"
            k += 1
            reg.add(name, "inverse-witness")
            w = MultiPoly.variable(reg, dom, name)
            out.definitions[name] = ("inverse", d)
            prod = prod * (w * d - 1)
        out.equations.append(prod)
    out.disequations = []
    out.provenance.append("encode-disequation")
    return out


def eliminate_generator(system: DiophSystem, generator: str, modulus: MultiPoly, *,
                        reduce: bool = False, label: str | None = None) -> DiophSystem:
    """Split each equation ``sum_j E_j*gen^j = 0`` into ``E_j = 0`` for ``j < d``.

    ``modulus`` must be monic in ``generator``; with ``reduce=False`` every
    equation must already have ``gen``-degree below ``d``. Disequation
    tuples are split coordinate-wise the same way. The generator is removed
    from the registry.
    """
    if generator not in system.registry:
        raise StructuralError(f"generator {generator!r} is not registered")
    d = modulus.degree(generator)
    if d < 1:
        raise ContractViolation(f"modulus has no positive degree in {generator!r}")
    zero = MultiPoly.zero(system.registry, system.domain)

    def split(p: MultiPoly) -> list:
        if p.degree(generator) >= d:
            if not reduce:
                raise ContractViolation(
                    f"equation has {generator}-degree {p.degree(generator)} >= {d}")
            p = reduce_mod_monic(p, modulus.rebase(p.registry), generator)[1]
        parts = p.coefficients_in(generator)
        return [parts.get(j, zero) for j in range(d)]

    eqs = []
    for p in system.equations:
        eqs.extend(split(p))
    diseqs = []
    for dq in system.disequations:
        lhs, rhs = [], []
        for a, b in zip(dq.lhs, dq.rhs):
            if a.degree(generator) <= 0 and b.degree(generator) <= 0:
                lhs.append(a)
                rhs.append(b)
            else:
                lhs.extend(split(a))
                rhs.extend(split(b))
        diseqs.append((lhs, rhs))
    for pr in system.predicates:
        if pr.expr is not None and pr.expr.degree(generator) > 0:
            raise StructuralError(f"predicate expression involves generator {generator!r}")
    reg = system.registry.without([generator])
    out = DiophSystem(system.ring, reg)
    out.equations = [p.rebase(reg) for p in _dedupe(eqs)]
    out.disequations = [Disequation(tuple(a.rebase(reg) for a in lhs), tuple(b.rebase(reg) for b in rhs))
                        for lhs, rhs in diseqs]
    out.predicates = [PredicateConstraint(p.kind, p.args, p.degree,
                                          p.expr.rebase(reg) if p.expr is not None else None)
                      for p in system.predicates]
    out.definitions = {k: (kind, e.rebase(reg), *extra)
                       for k, (kind, e, *extra) in system.definitions.items() if k != generator}
    out.provenance = list(system.provenance) + [label or f"eliminate-{generator}"]
    return out


def conjoin_single(system: DiophSystem, z: ZeroForm | None = None, *,
                   waive_predicates: bool = False, cap: int | None = None) -> MultiPoly:
    """Left-fold the equations under ``z``: ``Z(...Z(Z(f1, f2), f3)...)``.

    ``cap`` bounds the number of terms of every intermediate result.
    """
    if system.disequations:
        raise ContractViolation("run encode_disequation before conjoin_single")
    if system.predicates and not waive_predicates:
        raise ContractViolation(
            f"{len(system.predicates)} unresolved predicates; splice them or waive explicitly")
    z = z or ZeroForm.default(system.domain)
    eqs = system.equations
    if not eqs:
        return MultiPoly.zero(system.registry, system.domain)
    acc = eqs[0]
    for f in eqs[1:]:
        projected = (len(acc) + len(f)) ** 2
        if cap is not None and projected > cap:
            raise CapExceeded(
                f"conjoin_single would need up to {projected} terms (cap {cap})", projected, cap)
        acc = z(acc, f)
    return acc


def disjoin(polys) -> MultiPoly:
    """Product of the polynomials: vanishes iff one factor does."""
    polys = list(polys)
    if not polys:
        raise ContractViolation("disjoin of an empty list; use the unsolvable sentinel 1 = 0")
    acc = polys[0]
    for p in polys[1:]:
        acc = acc * p
    return acc


def unsolvable_sentinel(system: DiophSystem, label: str) -> DiophSystem:
    """Canonical unsolvable system: no variables, the single equation 1 = 0."""
    reg = Registry()
    out = DiophSystem(system.ring, reg, [MultiPoly.constant(reg, system.domain, 1)])
    out.provenance = list(system.provenance) + [label]
    return out


# ---------------------------------------------------------------- splicing

def splice_definition(outer: DiophSystem, target: PredicateConstraint, definition: DiophSystem,
                      parameters=None) -> DiophSystem:
    """Replace ``target`` by the equations of ``definition``.

    ``parameters`` names the definition variables bound to the target's
    arguments (default: the first registry entries). For ``nonzero`` the
    single parameter is bound to the target expression; for
    ``irreducible`` parameter ``k`` is bound to argument variable ``k``.
    Remaining definition variables become fresh ``aux[p][k]`` variables.
    """
    if target not in outer.predicates:
        raise StructuralError("target predicate is not part of the outer system")
    slot = outer.predicates.index(target)
    dreg = definition.registry
    if parameters is None:
        arity = 1 if target.kind == "nonzero" else len(target.args)
        parameters = dreg.names[:arity]
    parameters = list(parameters)
    if target.kind == "nonzero":
        if len(parameters) != 1:
            raise StructuralError(f"nonzero needs one parameter, definition has {len(parameters)}")
    elif len(parameters) != len(target.args):
        raise StructuralError(
            f"arity mismatch: predicate has {len(target.args)} arguments, "
            f"definition has {len(parameters)} parameters")
    if definition.disequations or definition.predicates:
        raise StructuralError("definitions must be plain equation systems")
    out = outer.extended()
    reg, dom = out.registry, out.domain
    if definition.domain != dom:
        raise StructuralError("definition lives over a different domain")
    mapping: dict[int, MultiPoly] = {}
    for k, name in enumerate(parameters):
        if target.kind == "nonzero":
            mapping[dreg.index(name)] = target.expr.rebase(reg)
        else:
            mapping[dreg.index(name)] = MultiPoly.variable(reg, dom, target.args[k])
    p = fresh_index(reg, "aux")
    renamed = {}
    k = 0
    for var in dreg:
        if var.name in parameters:
            continue
        new = f"aux[{p}][{k}]"
        k += 1
        reg.add(new, "auxiliary")
        renamed[var.name] = new
        mapping[dreg.index(var.name)] = MultiPoly.variable(reg, dom, new)
    del out.predicates[slot]
    out.equations.extend(transplant(e, reg, mapping) for e in definition.equations)
    for name, (kind, expr, *extra) in definition.definitions.items():
        if name in renamed:
            out.definitions[renamed[name]] = (kind, transplant(expr, reg, mapping),
                                              *(renamed[x] for x in extra))
    out.provenance.append(f"splice-{target.kind}")
    return out


def nonzero_definition(domain: Domain) -> DiophSystem:
    """Existential definition of ``x != 0`` with parameter ``x``.

    Fields: ``w*x - 1 = 0``. Integers: ``x*u = (2v - 1)(3w - 1)``; the right
    side is odd times a nonzero residue mod 3, so it never vanishes, and every
    nonzero ``x`` factors that way.
    """
    from diophgal.algebra.ring import RingDescriptor

    reg = Registry()
    reg.add("x", "auxiliary")
    x = MultiPoly.variable(reg, domain, "x")
    sys = DiophSystem(RingDescriptor(domain), reg, provenance=["nonzero-definition"])
    if domain.is_field:
        reg.add("w", "inverse-witness")
        w = MultiPoly.variable(reg, domain, "w")
        sys.equations = [w * x - 1]
        sys.definitions["w"] = ("inverse", x)
        return sys
    for name in ("u", "v", "w"):
        reg.add(name, "auxiliary")
    u, v, w = (MultiPoly.variable(reg, domain, n) for n in ("u", "v", "w"))
    sys.equations = [x * u - (v * 2 - 1) * (w * 3 - 1)]
    sys.definitions["u"] = ("odd-3-split", x, "v", "w")
    return sys


def irreducible_definition_fp(domain: Domain, d: int) -> DiophSystem:
    """Exhaustive definition of ``irreducible(d)`` over a prime field.

    Parameters ``a[0]..a[d-1]`` (constant term first); the single equation
    is the product over all monic irreducibles ``c`` of degree ``d`` of the
    ZeroForm fold of ``(a_i - c_i)``.
    """
    from diophgal.algebra.ring import RingDescriptor
    from diophgal.oracle.factor import monic_irreducibles

    if not domain.is_prime_field:
        raise ContractViolation("exhaustive irreducibility definitions need a prime field")
    reg = Registry()
    for i in range(d):
        reg.add(f"a[{i}]", "poly-coefficient")
    avars = [MultiPoly.variable(reg, domain, f"a[{i}]") for i in range(d)]
    z = ZeroForm.default(domain)
    factors = []
    for coeffs in monic_irreducibles(domain.p, d):
        pin = avars[0] - coeffs[0]
        for i in range(1, d):
            pin = z(pin, avars[i] - coeffs[i])
        factors.append(pin)
    sys = DiophSystem(RingDescriptor(domain), reg, provenance=[f"irreducible-definition-d{d}"])
    sys.equations = [disjoin(factors)] if factors else [MultiPoly.constant(reg, domain, 1)]
    return sys


def splice_all(system: DiophSystem, *, irreducible: bool = True, nonzero: bool = True) -> DiophSystem:
    """Splice the built-in realizations for every predicate that has one."""
    out = system
    for pr in list(system.predicates):
        if pr.kind == "nonzero" and nonzero:
            out = splice_definition(out, pr, nonzero_definition(out.domain))
        elif pr.kind == "irreducible" and irreducible and out.domain.is_prime_field and out.ring.n == 1:
            out = splice_definition(out, pr, irreducible_definition_fp(out.domain, pr.degree))
    return out


__all__ = [
    "ZeroForm", "least_nonresidue", "encode_disequation", "eliminate_generator", "conjoin_single",
    "disjoin", "splice_definition", "nonzero_definition", "irreducible_definition_fp", "splice_all",
    "unsolvable_sentinel", "transplant", "fresh_index",
]
