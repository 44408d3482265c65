"""Exhaustive search over a prime field."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from diophgal.encoder.system import DiophSystem
from diophgal.errors import CapExceeded, ContractViolation
from diophgal.oracle import kernels
from diophgal.oracle.verify import HOLDS, predicate_status
from diophgal.oracle.witness import Witness

DEFAULT_CAP = 10 ** 6
CHUNK = 1 << 16


@dataclass
class SolveReport:
    status: str  # solvable-with-witness | unsolvable-proven | unknown
    witnesses: list = field(default_factory=list)
    search_space: int = 0
    method: str = "raw"
    solutions: int = 0
    note: str = ""

    @property
    def solvable(self) -> bool:
        return self.status == "solvable-with-witness"

    def to_text(self) -> str:
        lines = [f"status {self.status}", f"method {self.method}",
                 f"search-space {self.search_space}", f"solutions {self.solutions}"]
        if self.note:
            lines.append(f"note {self.note}")
        for w in self.witnesses[:1]:
            lines.append(w.to_text().rstrip("\n"))
        return "\n".join(lines) + "\n"


def compile_system(system: DiophSystem):
    """Flat int64 arrays describing the equations and disequation groups."""
    p = system.domain.p
    polys = list(system.equations)
    groups = [0]
    for dq in system.disequations:
        diffs = dq.differences()
        polys.extend(diffs)
        groups.append(groups[-1] + len(diffs))
    coefs, term_start, mono_var, mono_exp, poly_start = [], [0], [], [], [0]
    maxexp = 1
    for poly in polys:
        for mono, c in poly.terms.items():
            coefs.append(int(c) % p)
            for v, e in mono:
                mono_var.append(v)
                mono_exp.append(e)
                maxexp = max(maxexp, e)
            term_start.append(len(mono_var))
        poly_start.append(len(coefs))
    arr = lambda xs: np.array(xs, dtype=np.int64)  # noqa: E731
    return (len(system.registry), arr(coefs), arr(term_start), arr(mono_var), arr(mono_exp),
            arr(poly_start), len(system.equations), arr(groups), maxexp)


def decode(code: int, p: int, names: list) -> dict:
    vals = {}
    for name in reversed(names):
        vals[name] = code % p
        code //= p
    return {n: vals[n] for n in names}


def brute_force_enumerate(system: DiophSystem, cap: int = DEFAULT_CAP, *,
                          max_witnesses: int = 16) -> SolveReport:
    """Try every assignment; predicates are checked by the oracle on survivors.

    Disequations count as satisfied when some coordinate difference is
    nonzero, so systems need not be passed through ``encode_disequation``.
    """
    if not system.domain.is_prime_field:
        raise ContractViolation("brute force needs a prime-field ring")
    if system.ring.n != 1:
        raise ContractViolation("brute force runs over the prime field itself (n = 1)")
    p = system.domain.p
    names = system.variables
    total = p ** len(names)
    if total > cap:
        raise CapExceeded(f"{p}^{len(names)} = {total} assignments exceed cap {cap}", total, cap)
    compiled = compile_system(system)
    report = SolveReport("unsolvable-proven", search_space=total, method="raw")
    for start in range(0, total, CHUNK):
        count = min(CHUNK, total - start)
        flags = kernels.satisfying_flags(start, count, p, compiled)
        for off in np.flatnonzero(flags):
            values = decode(start + int(off), p, names)
            if all(predicate_status(pr, system, values)[0] == HOLDS for pr in system.predicates):
                report.solutions += 1
                if len(report.witnesses) < max_witnesses:
                    report.witnesses.append(Witness(values))
    if report.solutions:
        report.status = "solvable-with-witness"
    return report
