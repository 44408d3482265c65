"""Tower arithmetic lowered to ring level with named intermediates.

An element of ``N = L[x]/(f)`` is a *grid*: ``d`` rows (powers of x) of
``n`` ring-level polynomials (powers of alpha). Products reduce modulo the
concrete minimal polynomial of alpha and modulo the symbolic ``f`` through a
table of ``x^e mod f`` whose entries are auxiliary variables. Every nontrivial
coordinate of a product is named, so no polynomial ever grows beyond a few
hundred terms regardless of ``d``.
"""

from __future__ import annotations

from diophgal.algebra.multipoly import MultiPoly
from diophgal.algebra.ring import RingDescriptor
from diophgal.encoder.galois import coeff_name, coord_name, denom_name, register_tower
from diophgal.encoder.lowering import Lowerer


class AlphaArith:
    """Arithmetic on ``n``-vectors of ring polynomials representing elements of L."""

    def __init__(self, ring: RingDescriptor, registry, lowerer: Lowerer):
        self.ring = ring
        self.n = n = ring.n
        self.reg = registry
        self.dom = ring.domain
        self.lw = lowerer
        low = [-self.dom.coerce(c) for c in ring.alpha_coeffs[:-1]]
        # alpha^k for k < 2n-1 as constant vectors
        self.red = []
        for k in range(max(2 * n - 1, 1)):
            if k < n:
                self.red.append([1 if j == k else 0 for j in range(n)])
            else:
                prev = self.red[-1]
                top = prev[-1]
                vec = [0] + prev[:-1]
                self.red.append([self.dom.coerce(v + top * low[j]) for j, v in enumerate(vec)])
        self._zero = MultiPoly.zero(registry, self.dom)

    def zero(self) -> list:
        return [self._zero] * self.n

    def const(self, c) -> list:
        return [MultiPoly.constant(self.reg, self.dom, c)] + [self._zero] * (self.n - 1)

    def add(self, u, v) -> list:
        return [a + b for a, b in zip(u, v)]

    def sub(self, u, v) -> list:
        return [a - b for a, b in zip(u, v)]

    def scale(self, u, c) -> list:
        return [a * c for a in u]

    def mul(self, u, v) -> list:
        n = self.n
        if n == 1:
            return [u[0] * v[0]]
        raw = [self._zero] * (2 * n - 1)
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if not b.is_zero():
                    raw[i + j] = raw[i + j] + a * b
        out = list(raw[:n])
        for k in range(n, 2 * n - 1):
            if raw[k].is_zero():
                continue
            for j, c in enumerate(self.red[k]):
                if c:
                    out[j] = out[j] + raw[k] * c
        return out

    def name(self, u) -> list:
        return [self.lw.name(a) for a in u]

    def is_zero(self, u) -> bool:
        return all(a.is_zero() for a in u)


class LoweredTower:
    """Generator of degree ``d`` over L with ``conjugates`` conjugate bundles.

    Same variable scheme as the expanded route (``a``, ``b``, ``t`` with an
    optional prefix); the generator and alpha never appear as variables.
    """

    def __init__(self, ring: RingDescriptor, lowerer: Lowerer, d: int, conjugates: int,
                 prefix: str = "", register: bool = True):
        self.ring = ring
        self.lw = lowerer
        self.reg = lowerer.reg
        self.dom = ring.domain
        self.d = d
        self.n = ring.n
        self.prefix = prefix
        self.conjugates = conjugates
        if register:
            register_tower(self.reg, self.n, d, conjugates, prefix)
        self.L = AlphaArith(ring, self.reg, lowerer)
        var = lambda name: MultiPoly.variable(self.reg, self.dom, name)  # noqa: E731
        self.c = [[var(coeff_name(i, j, prefix)) for j in range(self.n)] for i in range(d)]
        if d > 1 and conjugates > 0:
            self.t = var(denom_name(prefix))
        else:
            self.t = MultiPoly.constant(self.reg, self.dom, 1)
        self.s = {0: [self.L.const(0) if k != 1 else [self.t] + [self.L._zero] * (self.n - 1)
                      for k in range(d)]}
        for i in range(1, conjugates + 1):
            self.s[i] = [[var(coord_name(i, k, r, prefix)) for r in range(self.n)] for k in range(d)]
        self._xpow: dict = {}
        self._powers: dict = {}
        self._tpow: dict = {}

    # -- grids ---------------------------------------------------------
    def zero(self) -> list:
        return [self.L.zero() for _ in range(self.d)]

    def one(self) -> list:
        g = self.zero()
        g[0] = self.L.const(1)
        return g

    def scalar(self, lam) -> list:
        g = self.zero()
        g[0] = list(lam)
        return g

    def add(self, u, v) -> list:
        return [self.L.add(a, b) for a, b in zip(u, v)]

    def sub(self, u, v) -> list:
        return [self.L.sub(a, b) for a, b in zip(u, v)]

    def scale_ring(self, u, c: MultiPoly) -> list:
        return [self.L.scale(a, c) for a in u]

    def scale_field(self, u, lam) -> list:
        return [self.L.mul(a, lam) for a in u]

    def tpow(self, e: int) -> MultiPoly:
        if e not in self._tpow:
            self._tpow[e] = self.t ** e
        return self._tpow[e]

    def xpow(self, e: int) -> list:
        """Reduction of ``x^e`` for ``d <= e <= 2d-2`` (entries named)."""
        if e not in self._xpow:
            d = self.d
            if e == d:
                row = [self.L.scale(self.c[j], -1) for j in range(d)]
            else:
                prev = self.xpow(e - 1)
                top = prev[d - 1]
                row = []
                for j in range(d):
                    acc = self.L.scale(self.L.mul(self.c[j], top), -1)
                    if j:
                        acc = self.L.add(acc, prev[j - 1])
                    row.append(acc)
            self._xpow[e] = [self.L.name(v) for v in row]
        return self._xpow[e]

    def mul(self, u, v) -> list:
        d, L = self.d, self.L
        raw = [L.zero() for _ in range(2 * d - 1)]
        for i, a in enumerate(u):
            if L.is_zero(a):
                continue
            for j, b in enumerate(v):
                if not L.is_zero(b):
                    raw[i + j] = L.add(raw[i + j], L.mul(a, b))
        out = raw[:d]
        for e in range(d, 2 * d - 1):
            if L.is_zero(raw[e]):
                continue
            high = L.name(raw[e])
            row = self.xpow(e)
            for j in range(d):
                out[j] = L.add(out[j], L.mul(high, row[j]))
        return [L.name(v) for v in out]

    def coordinates(self, u) -> list:
        return [p for row in u for p in row]

    # -- conjugates ----------------------------------------------------
    def S(self, i: int) -> list:
        return [list(v) for v in self.s[i]]

    def power(self, i: int, k: int) -> list:
        key = (i, k)
        if key not in self._powers:
            if k == 0:
                val = self.one()
            elif i == 0 and k < self.d:
                val = self.zero()
                val[k] = self.L.const(0)
                val[k][0] = self.tpow(k)
            else:
                val = self.mul(self.power(i, k - 1), self.S(i))
            self._powers[key] = val
        return self._powers[key]

    def bundle(self, i: int) -> tuple:
        if i == 0:
            zero = MultiPoly.zero(self.reg, self.dom)
            return tuple(self.t if (k == 1 and r == 0) else zero
                         for k in range(self.d) for r in range(self.n))
        return tuple(p for k in range(self.d) for p in self.s[i][k])

    def root_condition(self, i: int) -> list:
        """``t^d f(S_i / t)`` as a grid."""
        acc = self.power(i, self.d)
        for e in range(self.d):
            term = self.scale_field(self.power(i, e), self.c[e])
            acc = self.add(acc, self.scale_ring(term, self.tpow(self.d - e)))
        return acc

    def apply(self, coeffs, j: int) -> list:
        """``t^(d-1) * sum_k coeffs[k] (S_j/t)^k`` for L-scalars ``coeffs``."""
        acc = self.zero()
        for k, lam in enumerate(coeffs):
            if self.L.is_zero(lam):
                continue
            term = self.scale_field(self.power(j, k), lam)
            acc = self.add(acc, self.scale_ring(term, self.tpow(self.d - 1 - k)))
        return acc

    def composition(self, i: int, j: int) -> list:
        """``t^d h_i(h_j(x))``."""
        return self.apply(self.s[i], j)

    def element_rep(self, r: int) -> list:
        return self.scale_ring(self.S(r), self.tpow(self.d - 1))

    def table_condition(self, i: int, j: int, r: int) -> list:
        return self.sub(self.composition(i, j), self.element_rep(r))
