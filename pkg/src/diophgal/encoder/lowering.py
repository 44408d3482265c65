"""Boolean combinations of polynomial conditions and their lowering to equations.

Formulas are built from :class:`Atom` (all listed polynomials vanish) and
:class:`NotAtom` (some listed polynomial is nonzero) with :class:`And` and
:class:`Or`. Constructors simplify constants and flatten, and structurally
equal subformulas are lowered once.

Lowering produces an *indicator* polynomial that vanishes exactly when the
formula holds: conjunction folds indicators through the ZeroForm,
disjunction multiplies them, and a nested ``NotAtom`` becomes
``prod_j (w_j p_j - 1)`` with inverse witnesses. In ``aux`` mode every
intermediate with more than one term is named by a fresh auxiliary
variable ``aux[p][k]`` carrying the defining equation ``aux - expr = 0``,
so sizes stay linear instead of squaring at every fold.
"""

from __future__ import annotations

from dataclasses import dataclass

from diophgal.algebra.multipoly import MultiPoly
from diophgal.encoder.passes import ZeroForm, fresh_index
from diophgal.encoder.system import Disequation, DiophSystem


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom(Formula):
    polys: tuple


@dataclass(frozen=True)
class NotAtom(Formula):
    polys: tuple


@dataclass(frozen=True)
class And(Formula):
    children: tuple


@dataclass(frozen=True)
class Or(Formula):
    children: tuple


def _constant_nonzero(p: MultiPoly) -> bool:
    return p.is_constant() and not p.is_zero()


def atom(polys) -> Formula:
    """All of ``polys`` vanish."""
    keep = []
    for p in polys:
        if p.is_zero():
            continue
        if _constant_nonzero(p):
            return FALSE
        keep.append(p)
    return Atom(tuple(keep)) if keep else TRUE


def not_atom(polys) -> Formula:
    """Some polynomial of ``polys`` is nonzero."""
    keep = []
    for p in polys:
        if p.is_zero():
            continue
        if _constant_nonzero(p):
            return TRUE
        keep.append(p)
    return NotAtom(tuple(keep)) if keep else FALSE


def _unique(items) -> tuple:
    seen, out = set(), []
    for f in items:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return tuple(out)


def conj(*parts) -> Formula:
    flat = []
    for f in parts:
        if f == FALSE:
            return FALSE
        if f == TRUE:
            continue
        flat.extend(f.children if isinstance(f, And) else (f,))
    flat = _unique(flat)
    if not flat:
        return TRUE
    return flat[0] if len(flat) == 1 else And(flat)


def disj(*parts) -> Formula:
    flat = []
    for f in parts:
        if f == TRUE:
            return TRUE
        if f == FALSE:
            continue
        flat.extend(f.children if isinstance(f, Or) else (f,))
    flat = _unique(flat)
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(flat)


def negate(f: Formula) -> Formula:
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    if isinstance(f, Atom):
        return not_atom(f.polys)
    if isinstance(f, NotAtom):
        return atom(f.polys)
    if isinstance(f, And):
        return disj(*(negate(c) for c in f.children))
    return conj(*(negate(c) for c in f.children))


def holds(f: Formula, value) -> bool:
    """Evaluate under an assignment; ``value`` maps a polynomial to a scalar."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return all(value(p) == 0 for p in f.polys)
    if isinstance(f, NotAtom):
        return any(value(p) != 0 for p in f.polys)
    if isinstance(f, And):
        return all(holds(c, value) for c in f.children)
    return any(holds(c, value) for c in f.children)


def formula_size(f: Formula, _seen=None) -> int:
    """Number of distinct nodes."""
    seen = set() if _seen is None else _seen
    if f in seen:
        return 0
    seen.add(f)
    if isinstance(f, (And, Or)):
        return 1 + sum(formula_size(c, seen) for c in f.children)
    return 1


class Lowerer:
    """Appends the lowering of formulas to a system it owns.

    ``mode`` is ``"aux"`` (name intermediates) or ``"expand"`` (inline
    everything). The system's registry must be private to the caller
    (see :meth:`DiophSystem.extended`).
    """

    def __init__(self, system: DiophSystem, *, mode: str = "aux", zero_form: ZeroForm | None = None):
        if mode not in ("aux", "expand"):
            raise ValueError(f"unknown lowering mode {mode!r}")
        self.system = system
        self.mode = mode
        self.reg = system.registry
        self.dom = system.domain
        self.z = zero_form or ZeroForm.default(self.dom)
        self.group = fresh_index(self.reg, "aux")
        self.count = 0
        self.w_next = fresh_index(self.reg, "w")
        self._memo: dict = {}

    # -- variables -----------------------------------------------------
    def fresh(self, expr: MultiPoly) -> MultiPoly:
        """New auxiliary variable constrained to equal ``expr``."""
        name = f"aux[{self.group}][{self.count}]"
        self.count += 1
        self.reg.add(name, "auxiliary")
        v = MultiPoly.variable(self.reg, self.dom, name)
        self.system.equations.append(v - expr)
        self.system.definitions[name] = ("value", expr)
        return v

    def name(self, expr: MultiPoly) -> MultiPoly:
        if self.mode == "expand" or len(expr) <= 1:
            return expr
        return self.fresh(expr)

    def inverse_witness(self, expr: MultiPoly) -> MultiPoly:
        name = f"w[{self.w_next}]"
        self.w_next += 1
        self.reg.add(name, "inverse-witness")
        self.system.definitions[name] = ("inverse", expr)
        return MultiPoly.variable(self.reg, self.dom, name)

    def zero_fold(self, polys) -> MultiPoly:
        polys = list(polys)
        acc = self.name(polys[0])
        for p in polys[1:]:
            acc = self.name(self.z(acc, self.name(p)))
        return acc

    def product(self, polys) -> MultiPoly:
        polys = list(polys)
        acc = self.name(polys[0])
        for p in polys[1:]:
            acc = self.name(acc * self.name(p))
        return acc

    # -- lowering ------------------------------------------------------
    def indicator(self, f: Formula) -> MultiPoly:
        if f in self._memo:
            return self._memo[f]
        if isinstance(f, Const):
            out = MultiPoly.constant(self.reg, self.dom, 0 if f.value else 1)
        elif isinstance(f, Atom):
            out = self.zero_fold(f.polys)
        elif isinstance(f, NotAtom):
            out = self._nonzero_indicator(f.polys)
        elif isinstance(f, And):
            out = self.zero_fold(self.indicator(c) for c in f.children)
        else:
            out = self.product(self.indicator(c) for c in f.children)
        self._memo[f] = out
        return out

    def _nonzero_indicator(self, polys) -> MultiPoly:
        if self.dom.is_field:
            factors = [self.inverse_witness(p) * p - 1 for p in polys]
            return self.product(factors)
        # integers: x != 0 iff x*u = (2v - 1)(3w - 1) has a solution
        x = polys[0] * polys[0]
        for p in polys[1:]:
            x = x + p * p
        x = self.name(x)
        names = []
        for _ in range(3):
            nm = f"aux[{self.group}][{self.count}]"
            self.count += 1
            self.reg.add(nm, "auxiliary")
            names.append(nm)
        u, v, w = (MultiPoly.variable(self.reg, self.dom, nm) for nm in names)
        self.system.definitions[names[0]] = ("odd-3-split", x, names[1], names[2])
        return x * u - (v * 2 - 1) * (w * 3 - 1)

    def assert_formula(self, f: Formula) -> None:
        """Add ``f`` at top level: conjunctions split, atoms become plain equations."""
        sys = self.system
        if f == TRUE:
            return
        if f == FALSE:
            sys.equations.append(MultiPoly.constant(self.reg, self.dom, 1))
        elif isinstance(f, And):
            for c in f.children:
                self.assert_formula(c)
        elif isinstance(f, Atom):
            sys.equations.extend(f.polys)
        elif isinstance(f, NotAtom):
            zero = MultiPoly.zero(self.reg, self.dom)
            sys.disequations.append(Disequation(tuple(f.polys), tuple(zero for _ in f.polys)))
        else:
            sys.equations.append(self.indicator(f))
