"""Exact witness verification against an emitted system."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from diophgal.encoder.system import DiophSystem, PredicateConstraint
from diophgal.errors import CapExceeded, CoverageError
from diophgal.oracle import factor as fp
from diophgal.oracle.rational import KRONECKER_MAX_DEGREE, rational_factor_smalldeg, trim
from diophgal.oracle.witness import Witness

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


def coefficients_of(pred: PredicateConstraint, values: dict, n: int) -> list:
    """Base-field coefficients ``c_0..c_{d-1}`` of an ``irreducible`` argument list (n = 1)."""
    if n != 1:
        raise ValueError("coefficients over L need n = 1")
    return [values[name] for name in pred.args]


def irreducible_status(coeffs: list, domain) -> tuple:
    """Oracle verdict for ``x^d + sum c_i x^i`` over the base field, with a note."""
    d = len(coeffs)
    if d == 1:
        return HOLDS, "linear"
    if domain.is_prime_field:
        p = domain.p
        f = fp.norm(list(coeffs) + [1], p)
        if d <= fp.FACTOR_MAX_DEGREE:
            facs = fp.factor_over_prime_field(f, p)
            ok = len(facs) == 1 and facs[0][1] == 1
            return (HOLDS if ok else FAILS), f"trial division: {len(facs)} distinct factor(s)"
        return (HOLDS if fp.is_irreducible(f, p) else FAILS), "Rabin test"
    f = [Fraction(c) for c in coeffs] + [Fraction(1)]
    # scale the root so the polynomial becomes integral (same splitting field)
    b = lcm(*(c.denominator for c in f))
    scaled = trim(c * b ** (d - i) for i, c in enumerate(f))
    if d > KRONECKER_MAX_DEGREE:
        return UNKNOWN, f"degree {d} beyond the Kronecker cap"
    try:
        res = rational_factor_smalldeg(scaled)
    except CapExceeded:
        return UNKNOWN, "degree cap"
    if res.irreducible:
        return HOLDS, "Kronecker: irreducible"
    return FAILS, f"Kronecker: factor {_fmt(res.factor)}"


def _fmt(coeffs) -> str:
    out = ""
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        mag = abs(c)
        body = f"{mag}" if (mono == "" or mag != 1) else ""
        body += ("*" if body and mono else "") + mono
        out += (" - " if c < 0 else " + ") + body if out else ("-" if c < 0 else "") + body
    return out or "0"


def predicate_status(pred: PredicateConstraint, system: DiophSystem, values: dict) -> tuple:
    if pred.kind == "nonzero":
        v = pred.expr.evaluate(values)
        return (HOLDS if v != 0 else FAILS), f"value {v}"
    if system.ring.n != 1:
        return UNKNOWN, "irreducibility over a proper extension has no oracle"
    return irreducible_status(coefficients_of(pred, values, 1), system.domain)


@dataclass
class VerifyReport:
    residuals: list = field(default_factory=list)
    disequations: list = field(default_factory=list)
    predicates: list = field(default_factory=list)

    @property
    def equations_ok(self) -> bool:
        return all(r == 0 for r in self.residuals)

    @property
    def accepted(self) -> bool:
        return (self.equations_ok and all(self.disequations)
                and all(status == HOLDS for _, status, _ in self.predicates))

    def failures(self) -> list:
        out = [f"eq {k}: residual {r}" for k, r in enumerate(self.residuals) if r != 0]
        out += [f"neq {k}: sides coincide" for k, ok in enumerate(self.disequations) if not ok]
        out += [f"pred {label}: {status} ({note})" for label, status, note in self.predicates
                if status != HOLDS]
        return out

    def to_text(self) -> str:
        lines = [f"residual eq {k} = {r}" for k, r in enumerate(self.residuals)]
        lines += [f"neq {k} {'holds' if ok else 'FAILS'}" for k, ok in enumerate(self.disequations)]
        lines += [f"pred {label} {status} ({note})" for label, status, note in self.predicates]
        lines.append("ACCEPTED" if self.accepted else "REJECTED")
        return "\n".join(lines) + "\n"


def verify_witness(system: DiophSystem, witness: Witness | dict) -> VerifyReport:
    """Evaluate every equation, disequation and predicate exactly.

    The witness must cover the registry; gaps raise :class:`CoverageError`
    (use :func:`complete_witness` first to derive auxiliaries).
    """
    raw = witness.values if isinstance(witness, Witness) else witness
    missing = [n for n in system.variables if n not in raw]
    if missing:
        shown = ", ".join(missing[:5]) + (" ..." if len(missing) > 5 else "")
        raise CoverageError(f"witness misses {len(missing)} variable(s): {shown}")
    dom = system.domain
    values = {n: dom.coerce(raw[n]) for n in system.variables}
    report = VerifyReport()
    report.residuals = [e.evaluate(values) for e in system.equations]
    for dq in system.disequations:
        report.disequations.append(any(diff.evaluate(values) != 0 for diff in dq.differences()))
    for pred in system.predicates:
        status, note = predicate_status(pred, system, values)
        label = f"{pred.kind}" + (f"(d={pred.degree}; {pred.args[0]}..)" if pred.kind == "irreducible" else "")
        report.predicates.append((label, status, note))
    return report
