"""Arithmetic modulo a monic polynomial in one distinguished variable.

The same engine serves both levels of the tower: R[alpha] (modulus = the
minimal polynomial of alpha, concrete coefficients) and R[alpha][x]/f(x)
(modulus f with symbolic coefficients). Coefficients of the distinguished
variable may involve any other registry variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from diophgal.algebra.multipoly import MultiPoly, mono_mul
from diophgal.errors import ContractViolation, StructuralError


def attach_power(c: MultiPoly, var_index: int, k: int) -> MultiPoly:
    """Return ``c * var**k`` where ``c`` does not involve ``var``."""
    if k == 0 or c.is_zero():
        return c
    factor = ((var_index, k),)
    return MultiPoly(c.registry, c.domain,
                     {mono_mul(m, factor): v for m, v in c.terms.items()}, normalized=True)


def assemble(coeffs: dict[int, MultiPoly], var: str, registry, domain) -> MultiPoly:
    idx = registry.index(var)
    acc: dict = {}
    for k, c in coeffs.items():
        for m, v in attach_power(c, idx, k).terms.items():
            acc[m] = acc.get(m, 0) + v
    return MultiPoly(registry, domain, acc)


def monic_parts(f: MultiPoly, var: str) -> tuple[int, dict[int, MultiPoly]]:
    """Degree ``d`` of a monic ``f`` in ``var`` and its lower coefficients."""
    parts = f.coefficients_in(var)
    if not parts:
        raise ContractViolation("modulus is the zero polynomial")
    d = max(parts)
    lead = parts[d]
    if not (lead.is_constant() and lead.constant_value() == 1):
        raise ContractViolation(f"modulus is not monic in {var}")
    return d, {i: c for i, c in parts.items() if i < d}


def _reduce_coeffs(coeffs: dict[int, MultiPoly], d: int, lower: dict[int, MultiPoly]):
    quot: dict[int, MultiPoly] = {}
    top = max(coeffs, default=-1)
    for k in range(top, d - 1, -1):
        c = coeffs.pop(k, None)
        if c is None or c.is_zero():
            continue
        quot[k - d] = c
        for i, fi in lower.items():
            j = k - d + i
            prod = c * fi
            coeffs[j] = coeffs[j] - prod if j in coeffs else -prod
    return quot, {k: c for k, c in coeffs.items() if not c.is_zero()}


def reduce_mod_monic(p: MultiPoly, f: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly]:
    """Division with remainder by a monic ``f``: returns ``(q, r)`` with ``p = q*f + r``.

    ``deg_var(r) < deg_var(f)``; raises :class:`ContractViolation` when ``f``
    is not monic in ``var``.
    """
    if p.registry is not f.registry and p.registry != f.registry:
        raise StructuralError("dividend and modulus use different registries")
    d, lower = monic_parts(f, var)
    quot, rem = _reduce_coeffs(p.coefficients_in(var), d, lower)
    reg, dom = p.registry, p.domain
    return assemble(quot, var, reg, dom), assemble(rem, var, reg, dom)


@dataclass(frozen=True)
class QuotientRing:
    """``A[var]/(modulus)`` where A is the polynomial ring in the other variables."""

    modulus: MultiPoly
    var: str

    def __post_init__(self):
        d, lower = monic_parts(self.modulus, self.var)
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "_lower", lower)

    @property
    def registry(self):
        return self.modulus.registry

    @property
    def domain(self):
        return self.modulus.domain

    def _zero(self) -> MultiPoly:
        return MultiPoly.zero(self.registry, self.domain)

    def element(self, coords) -> "QuotientElement":
        coords = list(coords)
        if len(coords) > self.degree:
            raise ContractViolation(
                f"{len(coords)} coordinates exceed modulus degree {self.degree}")
        reg, dom = self.registry, self.domain
        out = []
        for c in coords:
            out.append(c if isinstance(c, MultiPoly) else MultiPoly.constant(reg, dom, c))
        out += [self._zero()] * (self.degree - len(out))
        return QuotientElement(self, tuple(out))

    def from_poly(self, p: MultiPoly) -> "QuotientElement":
        _, rem = _reduce_coeffs(p.coefficients_in(self.var), self.degree, self._lower)
        return self.element(rem.get(k, self._zero()) for k in range(self.degree))

    def one(self) -> "QuotientElement":
        return self.element([1])

    def generator(self) -> "QuotientElement":
        """Residue class of the distinguished variable."""
        if self.degree == 1:
            return self.element([-self._lower.get(0, self._zero())])
        return self.element([0, 1])

    def reduce_coeffs(self, coeffs: dict[int, MultiPoly]) -> "QuotientElement":
        _, rem = _reduce_coeffs(dict(coeffs), self.degree, self._lower)
        return self.element(rem.get(k, self._zero()) for k in range(self.degree))


@dataclass(frozen=True)
class QuotientElement:
    """``sum coords[j] * var**j`` reduced modulo the ring's modulus."""

    ring: QuotientRing
    coords: tuple

    def _check(self, other: "QuotientElement") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise StructuralError("elements of different quotient rings")

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(self.ring, tuple(-a for a in self.coords))

    def scale(self, c) -> "QuotientElement":
        return QuotientElement(self.ring, tuple(a * c for a in self.coords))

    def __mul__(self, other) -> "QuotientElement":
        if not isinstance(other, QuotientElement):
            return self.scale(other)
        self._check(other)
        raw: dict[int, MultiPoly] = {}
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if b.is_zero():
                    continue
                prod = a * b
                raw[i + j] = raw[i + j] + prod if (i + j) in raw else prod
        return self.ring.reduce_coeffs(raw)

    def __pow__(self, e: int) -> "QuotientElement":
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def to_poly(self) -> MultiPoly:
        return assemble(dict(enumerate(self.coords)), self.ring.var,
                        self.ring.registry, self.ring.domain)


def compose_mod(f: MultiPoly, h: MultiPoly, var: str) -> list[MultiPoly]:
    """Coefficients ``A_0..A_{d-1}`` of ``f(h(var)) mod f``.

    All-zero output means ``h`` sends the residue of ``var`` to another root
    of ``f``.
    """
    ring = QuotientRing(f, var)
    d = ring.degree
    lower = f.coefficients_in(var)
    hq = ring.from_poly(h)
    acc = ring.one()
    for i in range(d - 1, -1, -1):
        acc = acc * hq
        ci = lower.get(i)
        if ci is not None:
            acc = acc + ring.element([ci])
    return list(acc.coords)


def clear_denominators(q: MultiPoly, var: str) -> tuple[MultiPoly, Fraction]:
    """Scale the root of a monic ``q`` so every coefficient becomes integral.

    Returns ``(r, b)`` with ``r(W) = W^d + sum c_i b^(d-i) W^i``; each root
    of ``r`` is ``b`` times a root of ``q``.
    """
    d, lower = monic_parts(q, var)
    if q.domain.is_prime_field:
        return q, Fraction(1)
    b = 1
    for c in lower.values():
        for v in c.terms.values():
            if isinstance(v, Fraction):
                b = lcm(b, v.denominator)
    if b == 1:
        return q, Fraction(1)
    coeffs = {i: c * (b ** (d - i)) for i, c in lower.items()}
    coeffs[d] = MultiPoly.constant(q.registry, q.domain, 1)
    return assemble(coeffs, var, q.registry, q.domain), Fraction(b)
