"""Entry points: Galois set, group realization, subgroup and automorphism problems."""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial, perm

from diophgal.algebra.multipoly import MultiPoly, Registry
from diophgal.algebra.ring import RingDescriptor
from diophgal.encoder import galois as ex
from diophgal.encoder.galois import coefficient_vars, table_pairs
from diophgal.encoder.lowering import (FALSE, TRUE, Formula, Lowerer, atom, conj, disj,
                                       negate, not_atom)
from diophgal.encoder.passes import unsolvable_sentinel
from diophgal.encoder.system import Disequation, DiophSystem, PredicateConstraint
from diophgal.encoder.tower import LoweredTower
from diophgal.errors import CapExceeded, ContractViolation
from diophgal.groups.subgroups import enumerate_injections
from diophgal.groups.table import GroupTable

EXPAND_MAX_DEGREE = 4
SUBGROUP_MAX_GROUP_ORDER = 12
SUBGROUP_MAX_SUBGROUP_ORDER = 6
AUTOMORPHISM_MAX_DEGREE = 4
AUTOMORPHISM_MAX_NODES = 2_000_000


def _resolve(lowering: str, d: int) -> str:
    if lowering == "auto":
        return "expand" if d <= EXPAND_MAX_DEGREE else "aux"
    if lowering not in ("expand", "aux"):
        raise ContractViolation(f"unknown lowering {lowering!r}")
    return lowering


# ---------------------------------------------------------------- lowered route

def _lowered_galois(ring: RingDescriptor, d: int, g: GroupTable | None):
    sys = DiophSystem(ring, Registry(), provenance=["galois-set"])
    lw = Lowerer(sys, mode="aux")
    tower = LoweredTower(ring, lw, d, d - 1)
    sys.predicates.append(PredicateConstraint("irreducible", coefficient_vars(ring.n, d), d))
    for i in range(1, d):
        lw.assert_formula(atom(tower.coordinates(tower.root_condition(i))))
    for i in range(d):
        for r in range(i + 1, d):
            sys.disequations.append(Disequation(tower.bundle(i), tower.bundle(r)))
    if g is not None:
        for i, j, r in table_pairs(g):
            lw.assert_formula(atom(tower.coordinates(tower.table_condition(i, j, r))))
        sys.provenance.append(f"group-table:{g.name}")
    sys.provenance.append("lowered-tower")
    return sys, lw, tower


def encode_galois_set(ring: RingDescriptor, d: int, *, lowering: str = "auto") -> DiophSystem:
    """Monic degree-``d`` generators of Galois extensions of L, with conjugate witnesses.

    ``lowering="expand"`` builds each equation in ``R[alpha][beta]/(f)`` and
    splits it with the elimination passes; ``"aux"`` computes at ring level
    with named intermediates. ``"auto"`` expands up to degree 4.
    """
    if d < 1:
        raise ContractViolation("degree must be at least 1")
    if d == 1 or _resolve(lowering, d) == "expand":
        return ex.galois_set_expanded(ring, d)
    return _lowered_galois(ring, d, None)[0]


def encode_group_realization(ring: RingDescriptor, g: GroupTable, *,
                             lowering: str = "auto") -> DiophSystem:
    """Galois set of degree ``|g|`` plus the composition law of ``g``."""
    d = g.order
    if d == 1 or _resolve(lowering, d) == "expand":
        return ex.group_realization_expanded(ring, g)
    return _lowered_galois(ring, d, g)[0]


# ---------------------------------------------------------------- subgroup problem

def candidate_tuples(h: GroupTable, g: GroupTable, *, prefilter: bool = True) -> list:
    """Image tuples for H's non-identity elements.

    With ``prefilter`` only injective homomorphisms survive; otherwise every
    ordered tuple of distinct non-identity elements is a candidate.
    """
    if g.order % h.order:
        return []
    if prefilter:
        return enumerate_injections(h, g)
    return list(permutations(range(1, g.order), h.order - 1))


def encode_subgroup_problem(ring: RingDescriptor, g: GroupTable, h: GroupTable, *,
                            lowering: str = "auto", prefilter: bool = True,
                            disjunction: str = "aux",
                            max_group_order: int = SUBGROUP_MAX_GROUP_ORDER,
                            max_subgroup_order: int = SUBGROUP_MAX_SUBGROUP_ORDER) -> DiophSystem:
    """Realization of ``g`` together with a disjunction over embeddings of ``h``."""
    if g.order > max_group_order:
        raise CapExceeded(f"|G| = {g.order} exceeds cap {max_group_order}; "
                          f"{perm(g.order - 1, max(h.order - 1, 0))} candidate tuples",
                          g.order, max_group_order)
    if h.order > max_subgroup_order:
        raise CapExceeded(f"|H| = {h.order} exceeds cap {max_subgroup_order}",
                          h.order, max_subgroup_order)
    mode = "expand" if g.order == 1 else _resolve(lowering, g.order)
    candidates = candidate_tuples(h, g, prefilter=prefilter)
    if not candidates:
        base = DiophSystem(ring, Registry(), provenance=[f"subgroup:{h.name}<={g.name}"])
        return unsolvable_sentinel(base, "no-candidates")

    if mode == "expand":
        pre, tower = ex._base_system(ring, g.order, "galois-set")
        for i, j, r in table_pairs(g):
            pre.equations.append(tower.table_condition(i, j, r).to_poly())
        pre.provenance.append(f"group-table:{g.name}")
        system = ex._eliminate(pre, tower).extended()
        reg = system.registry

        def condition(i, j, r):
            return [p.rebase(reg) for p in ex.split_element(tower.table_condition(i, j, r), ring)]

        lw = Lowerer(system, mode=disjunction)
    else:
        system, lw, ltower = _lowered_galois(ring, g.order, g)
        if disjunction != "aux":
            lw.mode = disjunction

        def condition(i, j, r):
            return ltower.coordinates(ltower.table_condition(i, j, r))

    branches = []
    for images in candidates:
        phi = (0,) + tuple(images)
        parts = []
        for a in range(1, h.order):
            for b in range(1, h.order):
                c = h.mul(a, b)
                parts.append(atom(condition(phi[a], phi[b], phi[c])))
        branches.append(conj(*parts))
    lw.assert_formula(disj(*branches))
    system.provenance.append(f"subgroup:{h.name}:{len(candidates)}-candidates")
    return system


# ---------------------------------------------------------------- automorphism problem

def automorphism_degrees(n: int) -> list:
    """Candidate degrees of the Galois closure: multiples of ``n`` up to ``n!``."""
    return list(range(n, factorial(n) + 1, n))


def projected_nodes(n: int, m: int) -> int:
    """Rough count of formula nodes the encoding would create."""
    k = n // m
    total = 0
    for ell in automorphism_degrees(n):
        size = ell // n
        subsets = comb(ell - 1, size - 1)
        per_subset = (size - 1) ** 2 * ell
        if size > 1:
            per_subset += comb(ell - 1, k - 1) * ell * k * (size - 1) ** 2 * (ell - 1)
        total += subsets * per_subset + ell * ell * n
    return total


def rho_name(ell: int, u: int, k: int, r: int) -> str:
    return f"N{ell}.rho[{u}][{k}][{r}]"


class _Branch:
    """Formulas for one candidate degree of the Galois closure."""

    def __init__(self, N: LoweredTower, M: LoweredTower, n: int, m: int):
        self.N, self.M, self.n, self.m = N, M, n, m
        self.ell = N.d
        self._atoms: dict = {}

    # group-level conditions read off the implicit composition law
    def prod_is(self, a: int, b: int, c: int) -> Formula:
        """``h_a o h_b = h_c``."""
        if a == 0:
            return TRUE if b == c else FALSE
        if b == 0:
            return TRUE if a == c else FALSE
        if c in (a, b):
            return FALSE
        key = ("prod", a, b, c)
        if key not in self._atoms:
            self._atoms[key] = atom(self.N.coordinates(self.N.table_condition(a, b, c)))
        return self._atoms[key]

    def conj_is(self, x: int, r: int, q: int) -> Formula:
        """``sigma_r^-1 sigma_x sigma_r = sigma_q``, i.e. ``h_q o h_r = h_r o h_x``."""
        if r == 0 or x == 0:
            return TRUE if x == q else FALSE
        if q == 0:
            return FALSE
        key = ("conj", x, r, q)
        if key not in self._atoms:
            N = self.N
            self._atoms[key] = atom(N.coordinates(N.sub(N.composition(q, r), N.composition(r, x))))
        return self._atoms[key]

    def is_subgroup(self, S) -> Formula:
        rest = [s for s in S if s]
        inverses = conj(*(disj(*(self.prod_is(j, r, 0) for r in rest)) for j in rest))
        closed = conj(*(disj(*(self.prod_is(j, k, r) for r in S)) for j in rest for k in rest))
        return conj(inverses, closed)

    def conjugate_count(self, S, k: int) -> Formula:
        ell = self.ell
        rest = [s for s in S if s]
        memo: dict = {}

        def same(r: int, tau: int) -> Formula:
            if (r, tau) not in memo:
                memo[(r, tau)] = conj(*(
                    disj(*(conj(self.conj_is(x, r, q), self.conj_is(y, tau, q))
                           for y in rest for q in range(1, ell)))
                    for x in rest))
            return memo[(r, tau)]

        options = []
        for others in combinations(range(1, ell), k - 1):
            U = (0,) + others
            cover = conj(*(disj(*(same(r, tau) for tau in U)) for r in range(ell)))
            apart = conj(*(negate(same(a, b)) for a, b in combinations(U, 2)))
            options.append(conj(cover, apart))
        return disj(*options)

    # field-level conditions on the roots of h inside N
    def roots(self, registry) -> None:
        N, n, ell = self.N, self.n, self.ell
        dom = N.dom
        self.trho = MultiPoly.variable(registry, dom, f"N{ell}.trho")
        self.E = [[[MultiPoly.variable(registry, dom, rho_name(ell, u, kk, r)) for r in range(N.n)]
                   for kk in range(ell)] for u in range(n)]
        self._epow: dict = {}

    def epow(self, u: int, e: int):
        key = (u, e)
        if key not in self._epow:
            N = self.N
            self._epow[key] = N.one() if e == 0 else N.mul(self.epow(u, e - 1), self.E[u])
        return self._epow[key]

    def root_of_h(self, u: int) -> Formula:
        N, M, n = self.N, self.M, self.n
        acc = self.epow(u, n)
        for i in range(n):
            term = N.scale_field(self.epow(u, i), M.c[i])
            acc = N.add(acc, N.scale_ring(term, self.trho ** (n - i)))
        return atom(N.coordinates(acc))

    def fixed(self, u: int, s: int) -> Formula:
        if s == 0:
            return TRUE
        N = self.N
        moved = N.apply(self.E[u], s)
        return atom(N.coordinates(N.sub(moved, N.scale_ring(self.E[u], N.tpow(self.ell - 1)))))

    def tie(self, u: int) -> Formula:
        """``rho_u = g_u(rho_0)`` for the automorphism bundle ``g_u`` of M."""
        N, M, n = self.N, self.M, self.n
        lhs = N.scale_ring(self.E[u], M.t * self.trho ** (n - 1))
        rhs = N.zero()
        for kk, q in enumerate(M.s[u]):
            if M.L.is_zero(q):
                continue
            rhs = N.add(rhs, N.scale_ring(N.scale_field(self.epow(0, kk), q), self.trho ** (n - kk)))
        return atom(N.coordinates(N.sub(lhs, rhs)))

    def formula(self) -> Formula:
        n, m, ell = self.n, self.m, self.ell
        N = self.N
        size, k = ell // n, n // m
        common = [self.root_of_h(u) for u in range(n)]
        common += [not_atom(N.coordinates(N.sub(self.E[u], self.E[v])))
                   for u, v in combinations(range(n), 2)]
        common += [self.tie(u) for u in range(1, m)]
        choices = []
        for others in combinations(range(1, ell), size - 1):
            S = (0,) + others
            parts = [self.is_subgroup(S), self.conjugate_count(S, k)]
            parts += [self.fixed(u, s) for u in range(m) for s in S]
            parts += [disj(*(negate(self.fixed(u, s)) for s in S)) for u in range(m, n)]
            choices.append(conj(*parts))
        return conj(*common, disj(*choices))


def encode_automorphism_problem(ring: RingDescriptor, h: GroupTable, n: int, *,
                                max_degree: int = AUTOMORPHISM_MAX_DEGREE,
                                max_nodes: int = AUTOMORPHISM_MAX_NODES) -> DiophSystem:
    """Degree-``n`` extensions M of L with ``Aut(M/L)`` isomorphic to ``h``.

    Disjunction over the degree ``ell`` of a Galois closure N; in each
    branch a subgroup S of order ``ell/n`` with ``n/m`` conjugates is chosen
    by index, the generator of M is a root in N fixed by S, and the ``m``
    automorphism bundles of M obey ``h``'s table. The Galois-set conditions
    for every ``ell`` and the irreducibility predicates are asserted at top
    level (their variables are disjoint between branches).
    """
    m = h.order
    if n < 1 or n % m:
        raise ContractViolation(f"|H| = {m} does not divide n = {n}")
    if n > max_degree:
        raise CapExceeded(f"n = {n} exceeds cap {max_degree}; closure degrees up to {factorial(n)}",
                          n, max_degree)
    projected = projected_nodes(n, m)
    if projected > max_nodes:
        raise CapExceeded(f"encoding would need about {projected} formula nodes (cap {max_nodes})",
                          projected, max_nodes)
    sys = DiophSystem(ring, Registry(), provenance=[f"automorphism:{h.name}:n={n}"])
    lw = Lowerer(sys, mode="aux")
    if n == 1:
        for j in range(ring.n):
            sys.registry.add(f"M.a[0][{j}]", "poly-coefficient")
        sys.predicates.append(PredicateConstraint("irreducible", coefficient_vars(ring.n, 1, "M."), 1))
        sys.provenance.append("trivial-degree")
        return sys

    M = LoweredTower(ring, lw, n, m - 1, prefix="M.")
    sys.predicates.append(PredicateConstraint("irreducible", coefficient_vars(ring.n, n, "M."), n))
    for u in range(1, m):
        lw.assert_formula(atom(M.coordinates(M.root_condition(u))))
    for u, v in combinations(range(m), 2):
        sys.disequations.append(Disequation(M.bundle(u), M.bundle(v)))
    for i, j, r in table_pairs(h):
        lw.assert_formula(atom(M.coordinates(M.table_condition(i, j, r))))

    branches = []
    for ell in automorphism_degrees(n):
        prefix = f"N{ell}."
        N = LoweredTower(ring, lw, ell, ell - 1, prefix=prefix)
        sys.predicates.append(
            PredicateConstraint("irreducible", coefficient_vars(ring.n, ell, prefix), ell))
        for i in range(1, ell):
            lw.assert_formula(atom(N.coordinates(N.root_condition(i))))
        for i, r in combinations(range(ell), 2):
            sys.disequations.append(Disequation(N.bundle(i), N.bundle(r)))
        for u in range(n):
            for kk in range(ell):
                for r in range(ring.n):
                    sys.registry.add(rho_name(ell, u, kk, r), "conjugate-coordinate")
        sys.registry.add(f"N{ell}.trho", "denominator")
        br = _Branch(N, M, n, m)
        br.roots(sys.registry)
        branches.append(br.formula())
    lw.assert_formula(disj(*branches))
    sys.provenance.append("closure-degrees:" + "/".join(str(e) for e in automorphism_degrees(n)))
    return sys
