"""Exact sparse multivariate polynomials over Z, Q or F_p.

A monomial is a tuple of ``(variable_index, exponent)`` pairs sorted by index,
so polynomials stay cheap even when the registry holds thousands of
auxiliary variables. Indices refer to a :class:`Registry`, an append-only
symbol table shared by every polynomial of one system; appending never
renumbers existing variables.

Canonical order is graded lexicographic over registry order (earlier
variables are larger), highest term first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from diophgal.algebra.domain import Domain, Scalar
from diophgal.errors import ParseError, StructuralError

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()


@dataclass(frozen=True)
class Variable:
    name: str
    role: str


ROLES = (
    "poly-coefficient",
    "conjugate-coordinate",
    "denominator",
    "inverse-witness",
    "auxiliary",
    "generator",
)


class Registry:
    """Append-only ordered table of variables."""

    __slots__ = ("_vars", "_index")

    def __init__(self, variables: Iterable[Variable] = ()):
        self._vars: list[Variable] = []
        self._index: dict[str, int] = {}
        for v in variables:
            self.add(v.name, v.role)

    def add(self, name: str, role: str) -> int:
        if role not in ROLES:
            raise StructuralError(f"unknown variable role {role!r}")
        if name in self._index:
            raise StructuralError(f"variable {name!r} already registered")
        if not name or any(ch.isspace() for ch in name) or any(ch in name for ch in "+-*^/"):
            raise StructuralError(f"illegal variable name {name!r}")
        self._index[name] = len(self._vars)
        self._vars.append(Variable(name, role))
        return self._index[name]

    def ensure(self, name: str, role: str) -> int:
        if name in self._index:
            return self._index[name]
        return self.add(name, role)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown variable {name!r}") from None

    def name(self, index: int) -> str:
        return self._vars[index].name

    def role(self, name: str) -> str:
        return self._vars[self.index(name)].role

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self._vars)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self._vars)

    @property
    def names(self) -> list[str]:
        return [v.name for v in self._vars]

    def without(self, names: Iterable[str]) -> "Registry":
        drop = set(names)
        return Registry(v for v in self._vars if v.name not in drop)

    def copy(self) -> "Registry":
        return Registry(self._vars)

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and self._vars == other._vars

    def __hash__(self):
        return hash(tuple(self._vars))

    def __repr__(self) -> str:
        return f"Registry({self.names})"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    la, lb = len(a), len(b)
    if la == 1 and lb == 1:
        (va, ea), (vb, eb) = a[0], b[0]
        if va == vb:
            return ((va, ea + eb),)
        return (a[0], b[0]) if va < vb else (b[0], a[0])
    i = j = 0
    out = []
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    return (mono_degree(m), tuple((-v, e) for v, e in m))


def _normalize(domain: Domain, terms: dict) -> dict:
    if domain.kind == "Fp":
        p = domain.p
        out = {}
        for m, c in terms.items():
            c %= p
            if c:
                out[m] = c
        return out
    out = {}
    for m, c in terms.items():
        if c:
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            out[m] = c
    return out


class MultiPoly:
    """Immutable polynomial; ``terms`` maps monomials to nonzero scalars."""

    __slots__ = ("registry", "domain", "terms", "_hash")

    def __init__(self, registry: Registry, domain: Domain, terms: Mapping | None = None,
                 *, normalized: bool = False):
        self.registry = registry
        self.domain = domain
        self._hash = None
        if terms is None:
            self.terms = {}
        elif normalized:
            self.terms = dict(terms) if not isinstance(terms, dict) else terms
        else:
            self.terms = _normalize(domain, dict(terms))

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, registry: Registry, domain: Domain) -> "MultiPoly":
        return cls(registry, domain, {}, normalized=True)

    @classmethod
    def constant(cls, registry: Registry, domain: Domain, value) -> "MultiPoly":
        c = domain.coerce(value)
        return cls(registry, domain, {ONE_MONO: c} if c else {}, normalized=True)

    @classmethod
    def variable(cls, registry: Registry, domain: Domain, name: str, power: int = 1) -> "MultiPoly":
        idx = registry.index(name)
        mono = ((idx, power),) if power else ONE_MONO
        return cls(registry, domain, {mono: domain.coerce(1)}, normalized=True)

    def _like(self, terms: dict, normalized: bool = False) -> "MultiPoly":
        return MultiPoly(self.registry, self.domain, terms, normalized=normalized)

    def _coerce_other(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.registry is not self.registry and other.registry != self.registry:
                raise StructuralError("polynomials live over different variable registries")
            if other.domain != self.domain:
                raise StructuralError(f"domain mismatch: {self.domain} vs {other.domain}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.registry, self.domain, other)
        return NotImplemented

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise StructuralError("polynomial is not constant")
        return self.terms.get(ONE_MONO, 0)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "MultiPoly":
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        p = self.domain.p
        for m, c in small.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        if not p:
            return self._like(out)
        return self._like(out, normalized=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = self.domain.p
        if p:
            return self._like({m: (-c) % p for m, c in self.terms.items()}, normalized=True)
        return self._like({m: -c for m, c in self.terms.items()}, normalized=True)

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = self.domain.coerce(other)
            if not c:
                return self._like({}, normalized=True)
            return self._like({m: v * c for m, v in self.terms.items()})
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return self._like({}, normalized=True)
        if len(a) < len(b):
            a, b = b, a
        acc: dict = {}
        get = acc.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                acc[m] = get(m, 0) + ca * cb
        return self._like(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.registry, self.domain, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        return self * c

    # -- structure ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == self.domain.coerce(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.domain == other.domain and self.terms == other.terms and (
            self.registry is other.registry or self.registry == other.registry)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def variable_indices(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def variables(self) -> list[str]:
        return [self.registry.name(i) for i in sorted(self.variable_indices())]

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(mono_degree(m) for m in self.terms)
        idx = self.registry.index(var)
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == idx and e > best:
                    best = e
        return best

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k C_k * var^k``; returns ``{k: C_k}`` for nonzero ``C_k``."""
        idx = self.registry.index(var)
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = 0
            rest = m
            for pos, (v, e) in enumerate(m):
                if v == idx:
                    k = e
                    rest = m[:pos] + m[pos + 1:]
                    break
            parts.setdefault(k, {})[rest] = c
        return {k: self._like(t, normalized=True) for k, t in parts.items()}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def rebase(self, registry: Registry) -> "MultiPoly":
        """Re-express over another registry containing every variable used here."""
        if registry is self.registry:
            return self
        remap = {i: registry.index(self.registry.name(i)) for i in self.variable_indices()}
        if all(i == j for i, j in remap.items()):
            return MultiPoly(registry, self.domain, self.terms, normalized=True)
        terms = {}
        for m, c in self.terms.items():
            terms[tuple(sorted((remap[v], e) for v, e in m))] = c
        return MultiPoly(registry, self.domain, terms, normalized=True)

    # -- substitution and evaluation ----------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "MultiPoly":
        """Simultaneously replace variables by polynomials or scalars."""
        reg, dom = self.registry, self.domain
        bound: dict[int, MultiPoly] = {}
        for name, value in bindings.items():
            idx = reg.index(name)
            if isinstance(value, MultiPoly):
                bound[idx] = self._coerce_other(value)
            else:
                bound[idx] = MultiPoly.constant(reg, dom, value)
        if not bound:
            return self
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(idx: int, e: int) -> MultiPoly:
            key = (idx, e)
            if key not in powers:
                powers[key] = bound[idx] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self.terms.items():
            keep = tuple((v, e) for v, e in m if v not in bound)
            factor = None
            for v, e in m:
                if v in bound:
                    pw = power(v, e)
                    factor = pw if factor is None else factor * pw
            if factor is None:
                acc[keep] = acc.get(keep, 0) + c
                continue
            for fm, fc in factor.terms.items():
                mm = mono_mul(keep, fm)
                acc[mm] = acc.get(mm, 0) + c * fc
        return self._like(acc)

    def evaluate(self, values: Mapping[str, Scalar] | list) -> Scalar:
        """Exact value at a full assignment (mapping by name, or list by index)."""
        dom = self.domain
        if isinstance(values, Mapping):
            lookup = {}
            for i in self.variable_indices():
                name = self.registry.name(i)
                if name not in values:
                    raise StructuralError(f"no value for variable {name!r}")
                lookup[i] = dom.coerce(values[name])
        else:
            lookup = values
        p = dom.p
        total = 0
        if p:
            for m, c in self.terms.items():
                t = c
                for v, e in m:
                    t = t * pow(lookup[v], e, p) % p
                total += t
            return total % p
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * lookup[v] ** e
            total += t
        return dom.coerce(total)

    def partial_evaluate(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        return self.substitute({k: v for k, v in values.items() if k in self.registry})

    # -- text ---------------------------------------------------------
    def mono_text(self, m: Monomial) -> str:
        parts = []
        for v, e in m:
            name = self.registry.name(v)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        """Canonical text: graded-lex order, explicit coefficients, ``^`` and ``*``."""
        if not self.terms:
            return "0"
        chunks = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            mag = -c if neg else c
            body = str(mag)
            if m:
                body += "*" + self.mono_text(m)
            if i == 0:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append((" - " if neg else " + ") + body)
        return "".join(chunks)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()})"


def _parse_scalar(token: str) -> Scalar:
    if "/" in token:
        num, den = token.split("/")
        return Fraction(int(num), int(den))
    return int(token)


def parse_poly(text: str, registry: Registry, domain: Domain) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.to_text` (also accepts implicit unit coefficients)."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial text")
    # split into signed terms on ' + ' / ' - ' separators
    terms: list[tuple[int, str]] = []
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    pos = 0
    while True:
        nxt_plus = text.find(" + ", pos)
        nxt_minus = text.find(" - ", pos)
        cands = [x for x in (nxt_plus, nxt_minus) if x >= 0]
        if not cands:
            terms.append((sign, text[pos:]))
            break
        cut = min(cands)
        terms.append((sign, text[pos:cut]))
        sign = 1 if cut == nxt_plus else -1
        pos = cut + 3
    acc: dict = {}
    for sgn, body in terms:
        coeff: Scalar = 1
        mono: dict[int, int] = {}
        for k, factor in enumerate(body.split("*")):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"malformed term {body!r}")
            if k == 0 and (factor[0].isdigit()):
                try:
                    coeff = _parse_scalar(factor)
                except ValueError as exc:
                    raise ParseError(f"bad coefficient {factor!r}") from exc
                continue
            name, _, exp = factor.partition("^")
            if name not in registry:
                raise ParseError(f"unknown variable {name!r}")
            try:
                e = int(exp) if exp else 1
            except ValueError as exc:
                raise ParseError(f"bad exponent in {factor!r}") from exc
            idx = registry.index(name)
            mono[idx] = mono.get(idx, 0) + e
        m = tuple(sorted(mono.items()))
        acc[m] = acc.get(m, 0) + sgn * domain.coerce(coeff)
    return MultiPoly(registry, domain, acc)


def poly_arith(op: str, a: MultiPoly, b: MultiPoly | None = None) -> MultiPoly:
    """Dispatch ``add``/``sub``/``mul``/``neg``; mismatched registries raise."""
    if op == "neg":
        return -a
    if b is None:
        raise StructuralError(f"{op} needs two operands")
    if a.registry is not b.registry and a.registry != b.registry:
        raise StructuralError("polynomials live over different variable registries")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise StructuralError(f"unknown operation {op!r}")
