"""Univariate polynomials over F_p: arithmetic, factorization, irreducibility.

Polynomials are tuples of residues, constant term first, without trailing
zeros (the zero polynomial is ``()``). Trial-division factoring is plain
Python; Rabin's test and the batch enumeration of irreducibles run through
:mod:`diophgal.oracle.kernels`, so the two routes check each other.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from diophgal.algebra.multipoly import MultiPoly
from diophgal.errors import CapExceeded, ContractViolation, StructuralError
from diophgal.oracle import kernels

FACTOR_MAX_DEGREE = 12


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def norm(a, p: int) -> tuple:
    return trim(int(c) % p for c in a)


def degree(a) -> int:
    return len(a) - 1


def add(a, b, p: int) -> tuple:
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def sub(a, b, p: int) -> tuple:
    return add(a, tuple(-c % p for c in b), p)


def mul(a, b, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def divmod_poly(a, b, p: int) -> tuple:
    """``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] = (r[k - db + i] - c * b[i]) % p
    return trim(q), trim(r[:db])


def rem(a, b, p: int) -> tuple:
    return divmod_poly(a, b, p)[1]


def mulmod(a, b, f, p: int) -> tuple:
    return rem(mul(a, b, p), f, p)


def powmod(a, e: int, f, p: int) -> tuple:
    result, base = rem((1,), f, p), rem(a, f, p)
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = mulmod(base, base, f, p)
    return result


def compose_mod(outer, inner, f, p: int) -> tuple:
    """``outer(inner(x)) mod f`` by Horner."""
    acc: tuple = ()
    for c in reversed(outer):
        acc = add(mulmod(acc, inner, f, p), (c,) if c else (), p)
    return rem(acc, f, p)


def gcd(a, b, p: int) -> tuple:
    while b:
        a, b = b, rem(a, b, p)
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def monic_of_degree(p: int, d: int):
    """All monic degree-``d`` polynomials, ascending in ``(c_{d-1}, ..., c_0)``."""
    for high in product(range(p), repeat=d):
        yield tuple(reversed(high)) + (1,)


def from_multipoly(f: MultiPoly, var: str | None = None) -> tuple:
    """Coefficients of a univariate polynomial over F_p."""
    if not f.domain.is_prime_field:
        raise ContractViolation("expected a polynomial over a prime field")
    names = f.variables()
    if len(names) > 1 or (var is not None and names and names[0] != var):
        raise StructuralError("expected a univariate polynomial")
    parts = f.coefficients_in(names[0]) if names else {0: f}
    deg = max(parts) if parts else -1
    return trim(parts.get(k).constant_value() if k in parts else 0 for k in range(deg + 1))


def factor_over_prime_field(f, p: int) -> list:
    """Irreducible factors with multiplicity, by trial division in ascending degree.

    ``f`` is a monic coefficient tuple (or a univariate :class:`MultiPoly`).
    Every candidate divisor of degree ``k`` is tried only after all smaller
    factors were divided out, so each factor found is irreducible.
    """
    if isinstance(f, MultiPoly):
        f = from_multipoly(f)
    f = norm(f, p)
    if not f or f[-1] != 1:
        raise ContractViolation("factor_over_prime_field needs a monic polynomial")
    if degree(f) > FACTOR_MAX_DEGREE:
        raise CapExceeded(f"degree {degree(f)} exceeds trial-division cap {FACTOR_MAX_DEGREE}",
                          degree(f), FACTOR_MAX_DEGREE)
    out = []
    rest = f
    k = 1
    while 2 * k <= degree(rest):
        for g in monic_of_degree(p, k):
            mult = 0
            while True:
                q, r = divmod_poly(rest, g, p)
                if r:
                    break
                rest, mult = q, mult + 1
            if mult:
                out.append((g, mult))
            if 2 * k > degree(rest):
                break
        k += 1
    if degree(rest) >= 1:
        for i, (g, mult) in enumerate(out):
            if g == rest:
                out[i] = (g, mult + 1)
                break
        else:
            out.append((rest, 1))
    out.sort(key=lambda gm: (len(gm[0]), tuple(reversed(gm[0]))))
    return out


def is_irreducible_trial(f, p: int) -> bool:
    facs = factor_over_prime_field(f, p)
    return len(facs) == 1 and facs[0][1] == 1


def is_irreducible(f, p: int) -> bool:
    """Rabin's test through the compiled kernel; any degree."""
    f = norm(f, p)
    if not f or f[-1] != 1:
        inv = pow(f[-1], -1, p) if f else 0
        f = tuple(c * inv % p for c in f)
    return kernels.is_irreducible_fp(np.array(f, dtype=np.int64), p)


def monic_irreducibles(p: int, d: int) -> list:
    """Monic irreducible polynomials of degree ``d`` (coefficients constant first, leading 1)."""
    if d < 1:
        return []
    polys = kernels.all_monic(p, d)
    flags = kernels.batch_irreducible(polys, p)
    return [tuple(int(c) for c in row) for row, ok in zip(polys, flags) if ok]


def count_irreducibles(p: int, d: int) -> int:
    """Necklace formula ``(1/d) sum_{e | d} mu(e) p^(d/e)``."""
    def mobius(n: int) -> int:
        out, q = 1, 2
        while q * q <= n:
            if n % q == 0:
                n //= q
                if n % q == 0:
                    return 0
                out = -out
            q += 1
        return -out if n > 1 else out

    return sum(mobius(e) * p ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


def frobenius_roots(f, p: int) -> list:
    """Roots of an irreducible ``f`` in ``F_p[x]/(f)``: ``x^(p^k)`` for ``k < deg f``."""
    f = norm(f, p)
    table = kernels.frobenius_table(np.array(f, dtype=np.int64), p)
    return [trim(int(c) for c in row) for row in table[: degree(f)]]
