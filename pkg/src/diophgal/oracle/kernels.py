"""Prime-field hot loops: polynomial arithmetic mod f, batch irreducibility, brute force.

Each kernel exists twice: a numba ``@njit`` version written as scalar loops
and a vectorized pure-numpy version. Setting ``DIOPHGAL_DISABLE_NUMBA=1``
(or running without numba installed) selects the numpy versions. Both are
exercised by the test suite and compared in ``benchmarks/bench_kernels.py``.

Polynomials are int64 arrays of coefficients, constant term first; moduli
are monic and all values stay in ``[0, p)``, so products fit in int64 for
any prime below 2**31.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    flag = os.environ.get("DIOPHGAL_DISABLE_NUMBA", "")
    return HAVE_NUMBA and flag.strip().lower() in ("", "0", "false", "no")


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------- numba kernels

@_njit
def _nb_mulmod(a, b, f, p):
    d = f.shape[0] - 1
    prod = np.zeros(2 * d - 1 if d > 0 else 1, dtype=np.int64)
    for i in range(d):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(d):
            prod[i + j] = (prod[i + j] + ai * b[j]) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if c == 0:
            continue
        for i in range(d):
            prod[k - d + i] = (prod[k - d + i] - c * f[i]) % p
        prod[k] = 0
    return prod[:d].copy()


@_njit
def _nb_powmod(base, e, f, p):
    d = f.shape[0] - 1
    result = np.zeros(d, dtype=np.int64)
    result[0] = 1 % p
    b = base.copy()
    while e > 0:
        if e & 1:
            result = _nb_mulmod(result, b, f, p)
        e >>= 1
        if e > 0:
            b = _nb_mulmod(b, b, f, p)
    return result


@_njit
def _nb_frobenius(f, p):
    """Rows k = 0..d: x^(p^k) mod f."""
    d = f.shape[0] - 1
    out = np.zeros((d + 1, d), dtype=np.int64)
    x = np.zeros(d, dtype=np.int64)
    if d == 1:
        x[0] = (-f[0]) % p
    else:
        x[1] = 1
    out[0] = x
    for k in range(1, d + 1):
        out[k] = _nb_powmod(out[k - 1], p, f, p)
    return out


@_njit
def _nb_gcd_degree(a, b, p):
    """Degree of gcd(a, b) over F_p; arrays are trimmed copies, -1 for zero."""
    u = a.copy()
    v = b.copy()
    du = u.shape[0] - 1
    while du >= 0 and u[du] == 0:
        du -= 1
    dv = v.shape[0] - 1
    while dv >= 0 and v[dv] == 0:
        dv -= 1
    while dv >= 0:
        inv = 1
        lead = v[dv]
        e = p - 2
        base = lead
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        while du >= dv:
            c = u[du] * inv % p
            if c != 0:
                for i in range(dv + 1):
                    u[du - dv + i] = (u[du - dv + i] - c * v[i]) % p
            while du >= 0 and u[du] == 0:
                du -= 1
        tmp = u
        u = v
        v = tmp
        t = du
        du = dv
        dv = t
    return du


@_njit
def _nb_prime_divisors(d):
    out = np.zeros(0, dtype=np.int64)
    q = 2
    m = d
    while q <= m:
        if m % q == 0:
            out = np.append(out, q)
            while m % q == 0:
                m //= q
        q += 1
    return out


@_njit
def _nb_is_irreducible(f, p):
    d = f.shape[0] - 1
    if d <= 1:
        return d == 1
    frob = _nb_frobenius(f, p)
    for j in range(d):
        if frob[d][j] != frob[0][j]:
            return False
    qs = _nb_prime_divisors(d)
    for q in qs:
        g = frob[d // q].copy()
        g[1] = (g[1] - 1) % p
        if _nb_gcd_degree(g, f, p) != 0:
            return False
    return True


@_njit
def _nb_batch_irreducible(polys, p):
    n = polys.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        out[i] = _nb_is_irreducible(polys[i], p)
    return out


@_njit
def _nb_satisfying(start, count, p, nvars, coefs, term_start, mono_var, mono_exp,
                   poly_start, n_eq, group_start, maxexp):
    """Flags for assignments ``start .. start+count-1`` (variable 0 most significant)."""
    out = np.zeros(count, dtype=np.bool_)
    vals = np.zeros(nvars, dtype=np.int64)
    pw = np.zeros((nvars, maxexp + 1), dtype=np.int64)
    npolys = poly_start.shape[0] - 1
    pv = np.zeros(npolys, dtype=np.int64)
    for idx in range(count):
        code = start + idx
        for v in range(nvars - 1, -1, -1):
            vals[v] = code % p
            code //= p
        for v in range(nvars):
            pw[v, 0] = 1 % p
            for e in range(1, maxexp + 1):
                pw[v, e] = pw[v, e - 1] * vals[v] % p
        ok = True
        for k in range(npolys):
            acc = 0
            for t in range(poly_start[k], poly_start[k + 1]):
                term = coefs[t]
                for q in range(term_start[t], term_start[t + 1]):
                    term = term * pw[mono_var[q], mono_exp[q]] % p
                acc = (acc + term) % p
            pv[k] = acc
            if k < n_eq and acc != 0:
                ok = False
                break
        if not ok:
            continue
        for g in range(group_start.shape[0] - 1):
            any_nonzero = False
            for k in range(group_start[g], group_start[g + 1]):
                if pv[n_eq + k] != 0:
                    any_nonzero = True
                    break
            if not any_nonzero:
                ok = False
                break
        out[idx] = ok
    return out


# ---------------------------------------------------------------- numpy kernels

def _np_mulmod(a, b, f, p):
    d = len(f) - 1
    prod = np.convolve(a, b) % p
    prod = np.concatenate([prod, np.zeros(max(0, 2 * d - 1 - len(prod)), dtype=np.int64)])
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            prod[k - d:k] = (prod[k - d:k] - c * f[:d]) % p
            prod[k] = 0
    return prod[:d].copy()


def _np_powmod(base, e, f, p):
    d = len(f) - 1
    result = np.zeros(d, dtype=np.int64)
    result[0] = 1 % p
    b = np.asarray(base, dtype=np.int64).copy()
    while e:
        if e & 1:
            result = _np_mulmod(result, b, f, p)
        e >>= 1
        if e:
            b = _np_mulmod(b, b, f, p)
    return result


def _np_frobenius(f, p):
    d = len(f) - 1
    out = np.zeros((d + 1, d), dtype=np.int64)
    if d == 1:
        out[0, 0] = (-f[0]) % p
    else:
        out[0, 1] = 1
    for k in range(1, d + 1):
        out[k] = _np_powmod(out[k - 1], p, f, p)
    return out


def _trim(a):
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1].copy() if len(nz) else a[:0].copy()


def _np_gcd_degree(a, b, p):
    u, v = _trim(np.asarray(a, dtype=np.int64) % p), _trim(np.asarray(b, dtype=np.int64) % p)
    while len(v):
        inv = pow(int(v[-1]), -1, p)
        while len(u) >= len(v):
            c = u[-1] * inv % p
            shift = len(u) - len(v)
            u[shift:] = (u[shift:] - c * v) % p
            u = _trim(u)
        u, v = v, u
    return len(u) - 1


def _prime_divisors(d: int) -> list:
    out, q, m = [], 2, d
    while q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    return out


def _np_is_irreducible(f, p):
    f = np.asarray(f, dtype=np.int64)
    d = len(f) - 1
    if d <= 1:
        return d == 1
    frob = _np_frobenius(f, p)
    if not np.array_equal(frob[d], frob[0]):
        return False
    for q in _prime_divisors(d):
        g = frob[d // q].copy()
        g[1] = (g[1] - 1) % p
        if _np_gcd_degree(g, f, p) != 0:
            return False
    return True


def _np_batch_irreducible(polys, p):
    return np.array([_np_is_irreducible(row, p) for row in polys], dtype=bool)


def _np_satisfying(start, count, p, nvars, coefs, term_start, mono_var, mono_exp,
                   poly_start, n_eq, group_start, maxexp):
    codes = np.arange(start, start + count, dtype=np.int64)
    digits = np.empty((count, nvars), dtype=np.int64)
    for v in range(nvars - 1, -1, -1):
        digits[:, v] = codes % p
        codes = codes // p
    pw = np.ones((maxexp + 1, count, nvars), dtype=np.int64)
    for e in range(1, maxexp + 1):
        pw[e] = pw[e - 1] * digits % p
    pw[0] %= p
    npolys = len(poly_start) - 1
    values = np.zeros((npolys, count), dtype=np.int64)
    for k in range(npolys):
        acc = np.zeros(count, dtype=np.int64)
        for t in range(poly_start[k], poly_start[k + 1]):
            term = np.full(count, coefs[t], dtype=np.int64)
            for q in range(term_start[t], term_start[t + 1]):
                term = term * pw[mono_exp[q], :, mono_var[q]] % p
            acc = (acc + term) % p
        values[k] = acc
    ok = np.all(values[:n_eq] == 0, axis=0) if n_eq else np.ones(count, dtype=bool)
    for g in range(len(group_start) - 1):
        block = values[n_eq + group_start[g]: n_eq + group_start[g + 1]]
        ok &= np.any(block != 0, axis=0)
    return ok


# ---------------------------------------------------------------- dispatch

def _pick(nb, npy):
    return nb if numba_enabled() else npy


def mulmod(a, b, f, p: int) -> np.ndarray:
    args = (np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), np.asarray(f, dtype=np.int64))
    return _pick(_nb_mulmod, _np_mulmod)(*args, p)


def powmod(base, e: int, f, p: int) -> np.ndarray:
    return _pick(_nb_powmod, _np_powmod)(np.asarray(base, dtype=np.int64), e,
                                         np.asarray(f, dtype=np.int64), p)


def frobenius_table(f, p: int) -> np.ndarray:
    """``x^(p^k) mod f`` for ``k = 0..deg f``."""
    return _pick(_nb_frobenius, _np_frobenius)(np.asarray(f, dtype=np.int64), p)


def gcd_degree(a, b, p: int) -> int:
    return int(_pick(_nb_gcd_degree, _np_gcd_degree)(np.asarray(a, dtype=np.int64),
                                                      np.asarray(b, dtype=np.int64), p))


def is_irreducible_fp(f, p: int) -> bool:
    """Rabin's test for a monic ``f`` (coefficients constant term first)."""
    return bool(_pick(_nb_is_irreducible, _np_is_irreducible)(np.asarray(f, dtype=np.int64) % p, p))


def batch_irreducible(polys, p: int) -> np.ndarray:
    polys = np.ascontiguousarray(np.asarray(polys, dtype=np.int64) % p)
    return _pick(_nb_batch_irreducible, _np_batch_irreducible)(polys, p)


def satisfying_flags(start: int, count: int, p: int, compiled) -> np.ndarray:
    return _pick(_nb_satisfying, _np_satisfying)(start, count, p, *compiled)


def all_monic(p: int, d: int) -> np.ndarray:
    """Every monic degree-``d`` polynomial, lexicographic in (c_{d-1}, ..., c_0)."""
    codes = np.arange(p ** d, dtype=np.int64)
    out = np.zeros((p ** d, d + 1), dtype=np.int64)
    out[:, d] = 1
    for i in range(d):
        out[:, i] = (codes // p ** i) % p
    return out
