"""Description of the base ring R, its fraction field K and L = K(alpha)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from diophgal.algebra.domain import Domain
from diophgal.algebra.multipoly import MultiPoly, Registry
from diophgal.errors import ContractViolation, ParseError


@dataclass(frozen=True)
class RingDescriptor:
    """Base domain plus the monic minimal polynomial of alpha.

    ``alpha_coeffs`` lists the minimal polynomial's coefficients from the
    constant term upward; its length is ``n + 1``. The default ``(0, 1)``
    means alpha = 0, i.e. L = K.
    """

    domain: Domain
    alpha_coeffs: tuple = (0, 1)

    def __post_init__(self):
        coeffs = tuple(self.domain.coerce(c) for c in self.alpha_coeffs)
        if len(coeffs) < 2:
            raise ContractViolation("alpha's minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ContractViolation("alpha's minimal polynomial must be monic")
        if self.domain.kind == "Z" and any(isinstance(c, Fraction) for c in coeffs):
            raise ContractViolation("over Z alpha's minimal polynomial needs integer coefficients")
        object.__setattr__(self, "alpha_coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.alpha_coeffs) - 1

    @property
    def is_field(self) -> bool:
        return self.domain.is_field

    def alpha_minpoly(self, registry: Registry, var: str = "alpha") -> MultiPoly:
        dom = self.domain
        out = MultiPoly.zero(registry, dom)
        for k, c in enumerate(self.alpha_coeffs):
            if c:
                out = out + MultiPoly.variable(registry, dom, var, k) * c
        return out

    # -- ring spec mini-grammar ---------------------------------------
    @classmethod
    def parse(cls, spec: str) -> "RingDescriptor":
        """Parse ``Q``, ``Z``, ``Fp p=<prime>`` or ``numberfield minpoly=<c_n,...,c_0>``.

        Minimal-polynomial coefficients are written leading coefficient
        first. ``Z``, ``Q`` and ``Fp`` also accept an optional
        ``minpoly=`` suffix for a nontrivial extension.
        """
        tokens = spec.split()
        if not tokens:
            raise ParseError("empty ring spec")
        head, opts = tokens[0], {}
        for tok in tokens[1:]:
            key, eq, val = tok.partition("=")
            if not eq or not val:
                raise ParseError(f"malformed ring option {tok!r}")
            opts[key] = val
        try:
            if head == "Q":
                dom = Domain.rationals()
            elif head == "Z":
                dom = Domain.integers()
            elif head == "Fp":
                if "p" not in opts:
                    raise ParseError("Fp ring needs p=<prime>")
                dom = Domain.prime_field(int(opts.pop("p")))
            elif head == "numberfield":
                if "minpoly" not in opts:
                    raise ParseError("numberfield ring needs minpoly=<coefficients>")
                dom = Domain.rationals()
            else:
                raise ParseError(f"unknown ring {head!r}")
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        coeffs = (0, 1)
        if "minpoly" in opts:
            try:
                desc = [int(c) for c in opts.pop("minpoly").split(",")]
            except ValueError as exc:
                raise ParseError("minpoly coefficients must be integers") from exc
            coeffs = tuple(reversed(desc))
        if opts:
            raise ParseError(f"unknown ring options {sorted(opts)}")
        return cls(dom, coeffs)

    def spec(self) -> str:
        base = "numberfield" if (self.domain.kind == "Q" and self.n > 1) else self.domain.spec()
        if self.n == 1 and self.alpha_coeffs == (0, 1):
            return base
        desc = ",".join(str(c) for c in reversed(self.alpha_coeffs))
        return f"{base} minpoly={desc}"

    def __str__(self) -> str:
        return self.spec()
