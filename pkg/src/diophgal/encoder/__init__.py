"""Compilers from group-theoretic questions to polynomial systems."""

from diophgal.encoder.lowering import Lowerer, atom, conj, disj, negate, not_atom
from diophgal.encoder.passes import (ZeroForm, conjoin_single, disjoin, encode_disequation,
                                     eliminate_generator, irreducible_definition_fp,
                                     nonzero_definition, splice_all, splice_definition,
                                     unsolvable_sentinel)
from diophgal.encoder.problems import (automorphism_degrees, candidate_tuples,
                                       encode_automorphism_problem, encode_galois_set,
                                       encode_group_realization, encode_subgroup_problem)
from diophgal.encoder.system import Disequation, DiophSystem, PredicateConstraint, parse_system

__all__ = [
    "Disequation", "DiophSystem", "PredicateConstraint", "parse_system", "ZeroForm",
    "conjoin_single", "disjoin", "encode_disequation", "eliminate_generator",
    "irreducible_definition_fp", "nonzero_definition", "splice_all", "splice_definition",
    "unsolvable_sentinel", "Lowerer", "atom", "conj", "disj", "negate", "not_atom",
    "automorphism_degrees", "candidate_tuples", "encode_automorphism_problem",
    "encode_galois_set", "encode_group_realization", "encode_subgroup_problem",
]
