"""Galois-set and group-realization systems.

Conjugate ``i`` of the generator beta is ``(1/t) * sum_k s[i][k] beta^k``
with ``s[i][k] = sum_r b[i][k][r] alpha^r``; conjugate 0 is beta itself,
whose bundle is pinned to ``(0, t, 0, ..., 0)``. Equations are built in
``R[alpha][beta]/(f)``, then split along beta powers and alpha powers.
"""

from __future__ import annotations

from dataclasses import dataclass

from diophgal.algebra.multipoly import MultiPoly, Registry
from diophgal.algebra.quotient import QuotientElement, QuotientRing, reduce_mod_monic
from diophgal.algebra.ring import RingDescriptor
from diophgal.encoder.passes import eliminate_generator
from diophgal.encoder.system import Disequation, DiophSystem, PredicateConstraint
from diophgal.errors import ContractViolation
from diophgal.groups.table import GroupTable

BETA = "beta"
ALPHA = "alpha"


def coeff_name(i: int, j: int, prefix: str = "") -> str:
    return f"{prefix}a[{i}][{j}]"


def coord_name(i: int, k: int, r: int, prefix: str = "") -> str:
    return f"{prefix}b[{i}][{k}][{r}]"


def denom_name(prefix: str = "") -> str:
    return f"{prefix}t"


def register_tower(reg: Registry, n: int, d: int, conjugates: int, prefix: str = "") -> None:
    """Append ``a``, ``b`` and ``t`` variables for a degree-``d`` generator.

    ``conjugates`` counts the non-identity bundles (normally ``d - 1``).
    """
    for i in range(d):
        for j in range(n):
            reg.add(coeff_name(i, j, prefix), "poly-coefficient")
    if d == 1 or conjugates == 0:
        return
    for i in range(1, conjugates + 1):
        for k in range(d):
            for r in range(n):
                reg.add(coord_name(i, k, r, prefix), "conjugate-coordinate")
    reg.add(denom_name(prefix), "denominator")


def coefficient_vars(n: int, d: int, prefix: str = "") -> tuple:
    return tuple(coeff_name(i, j, prefix) for i in range(d) for j in range(n))


@dataclass
class TowerPolys:
    """Symbolic pieces of one tower, as polynomials in beta and alpha."""

    ring: RingDescriptor
    registry: Registry
    d: int
    conjugates: int
    prefix: str = ""

    def __post_init__(self):
        reg, dom, n = self.registry, self.ring.domain, self.ring.n
        self.dom = dom
        alpha_pows = [MultiPoly.variable(reg, dom, ALPHA, r) for r in range(n)]

        def in_alpha(names):
            acc = MultiPoly.zero(reg, dom)
            for r, name in enumerate(names):
                acc = acc + MultiPoly.variable(reg, dom, name) * alpha_pows[r]
            return acc

        self.c = [in_alpha([coeff_name(i, j, self.prefix) for j in range(n)]) for i in range(self.d)]
        f = MultiPoly.variable(reg, dom, BETA, self.d)
        for i, ci in enumerate(self.c):
            f = f + ci * MultiPoly.variable(reg, dom, BETA, i)
        self.f = f
        self.qr = QuotientRing(f, BETA)
        if self.d == 1:
            self.t = MultiPoly.constant(reg, dom, 1)
            self.S = [self.qr.generator()]
            return
        self.t = MultiPoly.variable(reg, dom, denom_name(self.prefix))
        self.s = {0: [self.t if k == 1 else MultiPoly.zero(reg, dom) for k in range(self.d)]}
        for i in range(1, self.conjugates + 1):
            self.s[i] = [in_alpha([coord_name(i, k, r, self.prefix) for r in range(n)])
                         for k in range(self.d)]
        self.S = {i: self.qr.element(self.s[i]) for i in self.s}
        self._powers: dict = {}

    # -- bundles -------------------------------------------------------
    def bundle(self, i: int) -> tuple:
        """R-level coordinates of conjugate ``i`` (k-major, then alpha power)."""
        reg, dom, n = self.registry, self.dom, self.ring.n
        if i == 0:
            zero = MultiPoly.zero(reg, dom)
            return tuple(self.t if (k == 1 and r == 0) else zero
                         for k in range(self.d) for r in range(n))
        return tuple(MultiPoly.variable(reg, dom, coord_name(i, k, r, self.prefix))
                     for k in range(self.d) for r in range(n))

    def power(self, i: int, k: int) -> QuotientElement:
        key = (i, k)
        if key not in self._powers:
            self._powers[key] = self.qr.one() if k == 0 else self.power(i, k - 1) * self.S[i]
        return self._powers[key]

    def tpow(self, e: int) -> MultiPoly:
        return self.t ** e

    # -- equations -----------------------------------------------------
    def root_condition(self, i: int) -> QuotientElement:
        """``t^d f(S_i / t)``: zero iff conjugate ``i`` is a root of f."""
        acc = self.qr.one()
        for e in range(self.d - 1, -1, -1):
            acc = acc * self.S[i] + self.qr.element([self.c[e] * self.tpow(self.d - e)])
        return acc

    def composition(self, i: int, j: int) -> QuotientElement:
        """``t^d h_i(h_j(beta))``, i.e. ``sum_k s_ik S_j^k t^(d-1-k)``."""
        acc = self.qr.element([])
        for k, sik in enumerate(self.s[i]):
            if sik.is_zero():
                continue
            acc = acc + self.power(j, k).scale(sik * self.tpow(self.d - 1 - k))
        return acc

    def element_rep(self, r: int) -> QuotientElement:
        """``t^d h_r(beta) = t^(d-1) S_r``."""
        return self.S[r].scale(self.tpow(self.d - 1))

    def table_condition(self, i: int, j: int, r: int) -> QuotientElement:
        return self.composition(i, j) - self.element_rep(r)


def split_element(elem: QuotientElement, ring: RingDescriptor) -> list:
    """Ring-level coordinates of an element of ``R[alpha][beta]/(f)`` (beta-major)."""
    reg, dom = elem.ring.registry, elem.ring.domain
    minpoly = ring.alpha_minpoly(reg, ALPHA)
    zero = MultiPoly.zero(reg, dom)
    out = []
    for coord in elem.coords:
        if coord.degree(ALPHA) >= ring.n:
            coord = reduce_mod_monic(coord, minpoly, ALPHA)[1]
        parts = coord.coefficients_in(ALPHA)
        out.extend(parts.get(j, zero) for j in range(ring.n))
    return out


def _base_system(ring: RingDescriptor, d: int, label: str) -> tuple[DiophSystem, TowerPolys]:
    if d < 1:
        raise ContractViolation("degree must be at least 1")
    reg = Registry()
    register_tower(reg, ring.n, d, d - 1)
    reg.add(BETA, "generator")
    reg.add(ALPHA, "generator")
    tower = TowerPolys(ring, reg, d, d - 1)
    sys = DiophSystem(ring, reg, provenance=[label])
    sys.predicates.append(PredicateConstraint("irreducible", coefficient_vars(ring.n, d), d))
    for i in range(1, d):
        sys.equations.append(tower.root_condition(i).to_poly())
    for i in range(d):
        for r in range(i + 1, d):
            sys.disequations.append(Disequation(tower.bundle(i), tower.bundle(r)))
    return sys, tower


def _eliminate(sys: DiophSystem, tower: TowerPolys) -> DiophSystem:
    out = eliminate_generator(sys, BETA, tower.f, label="eliminate-beta")
    minpoly = sys.ring.alpha_minpoly(out.registry, ALPHA)
    return eliminate_generator(out, ALPHA, minpoly, reduce=True, label="eliminate-alpha")


def galois_set_expanded(ring: RingDescriptor, d: int) -> DiophSystem:
    """Coefficient tuples of monic degree-``d`` generators of Galois extensions of L."""
    sys, tower = _base_system(ring, d, "galois-set")
    return _eliminate(sys, tower)


def table_pairs(g: GroupTable):
    """Pairs ``(i, j, r)`` with ``r = i*j`` and neither factor the identity."""
    return [(i, j, g.mul(i, j)) for i in range(1, g.order) for j in range(1, g.order)]


def group_realization_expanded(ring: RingDescriptor, g: GroupTable) -> DiophSystem:
    """Galois set of degree ``|g|`` plus composition equations from ``g``'s table."""
    d = g.order
    sys, tower = _base_system(ring, d, "galois-set")
    for i, j, r in table_pairs(g):
        sys.equations.append(tower.table_condition(i, j, r).to_poly())
    sys.provenance.append(f"group-table:{g.name}")
    return _eliminate(sys, tower)
