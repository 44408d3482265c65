"""Exact scalar, polynomial and quotient-ring arithmetic."""

from diophgal.algebra.domain import Domain, Scalar, is_prime
from diophgal.algebra.multipoly import (
    MultiPoly,
    Registry,
    Variable,
    parse_poly,
    poly_arith,
)
from diophgal.algebra.quotient import (
    QuotientElement,
    QuotientRing,
    clear_denominators,
    compose_mod,
    reduce_mod_monic,
)
from diophgal.algebra.ring import RingDescriptor

__all__ = [
    "Domain",
    "MultiPoly",
    "QuotientElement",
    "QuotientRing",
    "Registry",
    "RingDescriptor",
    "Scalar",
    "Variable",
    "clear_denominators",
    "compose_mod",
    "is_prime",
    "parse_poly",
    "poly_arith",
    "reduce_mod_monic",
]
