"""Independent checks: exact verification, exhaustive and structured search, factoring."""

from diophgal.oracle.brute import SolveReport, brute_force_enumerate
from diophgal.oracle.factor import (factor_over_prime_field, frobenius_roots, is_irreducible,
                                    monic_irreducibles)
from diophgal.oracle.rational import ProbeReport, galois_probe_rationals, rational_factor_smalldeg
from diophgal.oracle.structured import (automorphism_candidate, structured_solve_automorphism,
                                        structured_solve_finite_field, structured_solve_subgroup)
from diophgal.oracle.verify import VerifyReport, verify_witness
from diophgal.oracle.witness import Witness, complete_witness, parse_witness

__all__ = [
    "ProbeReport",
    "SolveReport",
    "VerifyReport",
    "Witness",
    "automorphism_candidate",
    "brute_force_enumerate",
    "complete_witness",
    "factor_over_prime_field",
    "frobenius_roots",
    "galois_probe_rationals",
    "is_irreducible",
    "monic_irreducibles",
    "parse_witness",
    "rational_factor_smalldeg",
    "structured_solve_automorphism",
    "structured_solve_finite_field",
    "structured_solve_subgroup",
    "verify_witness",
]
