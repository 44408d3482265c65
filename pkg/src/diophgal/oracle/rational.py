"""Oracles over Q: small-degree factoring and a Galois probe.

Polynomials are tuples of rationals, constant term first. The probe finds
candidate conjugation polynomials numerically and trusts none of them until
exact composition modulo ``f`` vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

import mpmath

from diophgal.algebra.multipoly import MultiPoly
from diophgal.errors import CapExceeded, ContractViolation, StructuralError

KRONECKER_MAX_DEGREE = 6
PROBE_MAX_DEGREE = 5
PROBE_PRECISION_BITS = 80
PROBE_DENOMINATOR_BOUND = 10 ** 4


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def q_coeffs(f) -> tuple:
    """Coefficient tuple from a tuple or a univariate :class:`MultiPoly` over Z or Q."""
    if not isinstance(f, MultiPoly):
        return trim(Fraction(c) for c in f)
    if f.domain.is_prime_field:
        raise ContractViolation("expected a polynomial over Z or Q")
    names = f.variables()
    if len(names) > 1:
        raise StructuralError("expected a univariate polynomial")
    parts = f.coefficients_in(names[0]) if names else {0: f}
    deg = max(parts) if parts else -1
    return trim(Fraction(parts[k].constant_value()) if k in parts else Fraction(0)
                for k in range(deg + 1))


def q_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def q_add(a, b) -> tuple:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def q_divmod(a, b) -> tuple:
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / b[-1]
        if c:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] -= c * b[i]
    return trim(q), trim(r[:db])


def q_compose_mod(outer, inner, f) -> tuple:
    """``outer(inner(x)) mod f`` in exact arithmetic."""
    acc: tuple = ()
    for c in reversed(outer):
        acc = q_divmod(q_add(q_mul(acc, inner), (c,) if c else ()), f)[1]
    return acc


def q_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------- factoring

@dataclass(frozen=True)
class FactorResult:
    irreducible: bool
    factor: tuple | None = None
    cofactor: tuple | None = None


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _interpolate(xs, ys) -> tuple:
    """Lagrange interpolation through integer points, exact."""
    coeffs: tuple = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis: tuple = (Fraction(1),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = q_mul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        coeffs = q_add(coeffs, tuple(c * yi / denom for c in basis))
    return coeffs


def rational_factor_smalldeg(f) -> FactorResult:
    """Decide irreducibility over Q of a monic integer polynomial of degree <= 6.

    Rational-root test for linear factors, then Kronecker: a monic factor
    of degree ``k`` is determined by its values at ``k+1`` integers, each of
    which divides the corresponding value of ``f``.
    """
    f = q_coeffs(f)
    d = len(f) - 1
    if d < 1:
        raise ContractViolation("constant polynomials have no irreducibility status")
    if f[-1] != 1 or any(c.denominator != 1 for c in f):
        raise ContractViolation("rational_factor_smalldeg needs a monic integer polynomial")
    if d > KRONECKER_MAX_DEGREE:
        raise CapExceeded(f"degree {d} exceeds Kronecker cap {KRONECKER_MAX_DEGREE}",
                          d, KRONECKER_MAX_DEGREE)
    if d == 1:
        return FactorResult(True)
    c0 = int(f[0])
    candidates = [0] if c0 == 0 else [s * r for r in _divisors(c0) for s in (1, -1)]
    for r in candidates:
        if q_eval(f, r) == 0:
            lin = (Fraction(-r), Fraction(1))
            return FactorResult(False, lin, q_divmod(f, lin)[0])
    if d <= 3:
        return FactorResult(True)
    pool = sorted(range(-12, 13), key=lambda x: (len(_divisors(int(q_eval(f, x)))), abs(x)))
    for k in range(2, d // 2 + 1):
        xs = sorted(pool[: k + 1])
        ys = [int(q_eval(f, x)) for x in xs]
        choices = [[s * v for v in _divisors(y) for s in (1, -1)] for y in ys]
        for vals in product(*choices):
            g = _interpolate(xs, vals)
            if len(g) - 1 != k or g[-1] != 1 or any(c.denominator != 1 for c in g):
                continue
            q, r = q_divmod(f, g)
            if not r:
                return FactorResult(False, g, q)
    return FactorResult(True)


# ---------------------------------------------------------------- Galois probe

@dataclass
class ProbeReport:
    status: str  # galois-with-witness | not-galois-certified | unknown
    conjugations: list = field(default_factory=list)
    precision_bits: int = PROBE_PRECISION_BITS
    denominator_bound: int = PROBE_DENOMINATOR_BOUND
    candidates_tried: int = 0
    note: str = ""


def _round_rational(z, bound: int, tol) -> Fraction | None:
    if abs(z.imag) > tol:
        return None
    q = Fraction(mpmath.nstr(z.real, 40, strip_zeros=False)).limit_denominator(bound)
    if abs(z.real - mpmath.mpf(q.numerator) / q.denominator) > tol:
        return None
    return q


def galois_probe_rationals(f, *, precision_bits: int = PROBE_PRECISION_BITS,
                           denominator_bound: int = PROBE_DENOMINATOR_BOUND) -> ProbeReport:
    """Look for ``d - 1`` nontrivial conjugations ``h`` with ``f(h(x)) = 0 mod f``.

    Any such ``h`` permutes the complex roots, so for each permutation the
    coefficients solve a Vandermonde system. Solutions are rounded to
    rationals of bounded denominator and kept only after exact checking.
    When every permutation has been tried and fewer than ``d`` roots lie in
    the quotient, the verdict is ``not-galois-certified`` (relative to the
    denominator bound).
    """
    f = q_coeffs(f)
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise ContractViolation("galois_probe_rationals needs a monic polynomial")
    if d > PROBE_MAX_DEGREE:
        raise CapExceeded(f"degree {d} exceeds probe cap {PROBE_MAX_DEGREE}", d, PROBE_MAX_DEGREE)
    report = ProbeReport("unknown", precision_bits=precision_bits, denominator_bound=denominator_bound)
    if d == 1:
        report.status = "galois-with-witness"
        return report
    with mpmath.workprec(precision_bits):
        try:
            roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(f)],
                                     maxsteps=200, extraprec=precision_bits)
        except mpmath.libmp.NoConvergence:
            report.note = "root finding did not converge"
            return report
        tol = mpmath.mpf(2) ** (-(precision_bits // 2))
        V = mpmath.matrix([[r ** k for k in range(d)] for r in roots])
        found: list = []
        for perm in permutations(range(d)):
            if perm[0] == 0:
                continue
            report.candidates_tried += 1
            rhs = mpmath.matrix([roots[perm[i]] for i in range(d)])
            try:
                sol = mpmath.lu_solve(V, rhs)
            except ZeroDivisionError:
                continue
            h = [_round_rational(sol[k], denominator_bound, tol) for k in range(d)]
            if any(c is None for c in h):
                continue
            h = trim(h)
            if h in found or h == (Fraction(0), Fraction(1)):
                continue
            if q_compose_mod(f, h, f):
                continue  # exactness gate
            found.append(h)
    report.conjugations = sorted(found)
    report.status = "galois-with-witness" if len(found) == d - 1 else "not-galois-certified"
    return report
