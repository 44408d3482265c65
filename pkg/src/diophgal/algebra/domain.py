"""Coefficient domains: the integers, the rationals and prime fields.

Scalars are plain Python numbers. Over Z and Q a scalar is an ``int`` when
its denominator is 1 and a :class:`fractions.Fraction` otherwise; over F_p it
is the canonical residue ``0 <= v < p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

Scalar = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


@dataclass(frozen=True)
class Domain:
    """Base ring R of an encoding together with its fraction field arithmetic."""

    kind: str  # "Z", "Q" or "Fp"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "Fp" and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind != "Fp" and self.p:
            raise ValueError("only prime fields carry a characteristic")

    @classmethod
    def integers(cls) -> "Domain":
        return cls("Z")

    @classmethod
    def rationals(cls) -> "Domain":
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> "Domain":
        return cls("Fp", p)

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.p

    def coerce(self, value) -> Scalar:
        """Normalize ``value`` into this domain's canonical scalar form.

        Over Z the value is interpreted in Q = Frac(Z); callers that need an
        actual ring element check :meth:`contains`.
        """
        if self.kind == "Fp":
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator vanishes mod {self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value

    def contains(self, value: Scalar) -> bool:
        if self.kind == "Z":
            return not isinstance(value, Fraction) or value.denominator == 1
        return True

    def inverse(self, value: Scalar) -> Scalar:
        if self.kind == "Fp":
            value %= self.p
            if value == 0:
                raise ZeroDivisionError("zero has no inverse")
            return pow(value, -1, self.p)
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.coerce(Fraction(1) / value)

    def elements(self):
        """Enumerate a prime field; infinite domains raise."""
        if self.kind != "Fp":
            raise ValueError("only prime fields are enumerable")
        return range(self.p)

    def spec(self) -> str:
        return f"Fp p={self.p}" if self.kind == "Fp" else self.kind

    def __str__(self) -> str:
        return self.spec()
