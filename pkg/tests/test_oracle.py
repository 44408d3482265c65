from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F, make_registry
from helpers import bundled_witness
from diophgal.algebra import RingDescriptor
from diophgal.encoder import (Disequation, DiophSystem, encode_automorphism_problem,
                              encode_disequation, encode_group_realization,
                              encode_subgroup_problem, parse_system)
from diophgal.errors import CapExceeded, ContractViolation, CoverageError
from diophgal.groups import library_group
from diophgal.oracle import (automorphism_candidate, brute_force_enumerate, complete_witness,
                             factor_over_prime_field, galois_probe_rationals, monic_irreducibles,
                             parse_witness, rational_factor_smalldeg, structured_solve_automorphism,
                             structured_solve_finite_field, structured_solve_subgroup,
                             verify_witness)
from diophgal.oracle import factor as fp
from diophgal.oracle import kernels
from diophgal.oracle.brute import compile_system
from diophgal.oracle.rational import q_compose_mod

F5 = RingDescriptor.parse("Fp p=5")
Q = RingDescriptor.parse("Q")


def has_root(f, p):
    return any(sum(c * x ** k for k, c in enumerate(f)) % p == 0 for x in range(p))


# ---------------------------------------------------------------- factoring over F_p

def test_factor_examples():
    assert factor_over_prime_field((1, 0, 1), 2) == [((1, 1), 2)]
    assert factor_over_prime_field((1, 1, 1), 2) == [((1, 1, 1), 1)]
    assert factor_over_prime_field((1, 1, 1, 1, 1), 2) == [((1, 1, 1, 1, 1), 1)]


def test_factor_rejects_non_monic_and_large():
    with pytest.raises(ContractViolation):
        factor_over_prime_field((1, 2), 5)
    with pytest.raises(CapExceeded):
        factor_over_prime_field((1,) + (0,) * 12 + (1,), 2)


def test_irreducible_counts():
    quad = monic_irreducibles(5, 2)
    cubic = monic_irreducibles(2, 3)
    assert len(quad) == 10
    assert sorted(cubic) == [(1, 0, 1, 1), (1, 1, 0, 1)]
    # rootless test decides irreducibility for degree <= 3
    for p, d, got in ((5, 2, quad), (2, 3, cubic), (3, 3, monic_irreducibles(3, 3))):
        expect = [f for f in product(range(p), repeat=d) if not has_root(f + (1,), p)]
        assert sorted(got) == sorted(f + (1,) for f in expect)


@pytest.mark.parametrize("p, d", [(2, 4), (2, 6), (3, 4), (5, 3), (7, 2)])
def test_irreducible_count_matches_necklace(p, d):
    assert len(monic_irreducibles(p, d)) == fp.count_irreducibles(p, d)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=1, max_size=8))
def test_factorization_properties(p, lower):
    f = fp.norm(list(lower) + [1], p)
    facs = factor_over_prime_field(f, p)
    prod = (1,)
    for g, m in facs:
        for _ in range(m):
            prod = fp.mul(prod, g, p)
        assert g[-1] == 1
        # no divisor of smaller positive degree
        for k in range(1, (len(g) - 1) // 2 + 1):
            assert all(fp.rem(g, h, p) for h in fp.monic_of_degree(p, k))
    assert prod == f
    assert fp.is_irreducible(f, p) == (len(facs) == 1 and facs[0][1] == 1)


# ---------------------------------------------------------------- rational side

# (x^2 + x + 1)(x^3 - x + 1), built with a plain convolution
QUINTIC_PRODUCT = tuple(sum(a * b for i, a in enumerate((1, 1, 1)) for j, b in enumerate((1, -1, 0, 1))
                            if i + j == k) for k in range(6))


@pytest.mark.parametrize("f, irreducible", [((-2, 0, 1), True), ((-1, -3, 0, 1), True),
                                            ((-1, 0, 0, 0, 1), False), ((4, 0, 0, 0, 1), False),
                                            (QUINTIC_PRODUCT, False), ((-2, 0, 0, 0, 0, 0, 1), True)])
def test_kronecker(f, irreducible):
    res = rational_factor_smalldeg(f)
    assert res.irreducible == irreducible
    if not irreducible:
        from diophgal.oracle.rational import q_mul
        assert q_mul(res.factor, res.cofactor) == tuple(Fraction(c) for c in f)


def test_kronecker_x4_minus_1_has_linear_factor():
    res = rational_factor_smalldeg((-1, 0, 0, 0, 1))
    assert len(res.factor) - 1 in (1, 3) or len(res.cofactor) - 1 in (1, 3)


def test_kronecker_degree_cap():
    with pytest.raises(CapExceeded):
        rational_factor_smalldeg((1,) + (0,) * 6 + (1,))


def test_probe_sqrt2():
    rep = galois_probe_rationals((-2, 0, 1))
    assert rep.status == "galois-with-witness"
    assert [tuple(h) for h in rep.conjugations] == [(0, -1)]


@pytest.mark.parametrize("f", [(1, -3, 0, 1), (-1, -3, 0, 1), (1, 1, 1, 1, 1)])
def test_probe_cyclic(f):
    rep = galois_probe_rationals(f)
    assert rep.status == "galois-with-witness"
    assert len(rep.conjugations) == len(f) - 2
    for h in rep.conjugations:
        assert not any(q_compose_mod(f, h, f))


def test_probe_cube_root_two_not_galois():
    rep = galois_probe_rationals((-2, 0, 0, 1))
    assert rep.status == "not-galois-certified"
    assert rep.precision_bits == 80 and rep.denominator_bound == 10 ** 4


# ---------------------------------------------------------------- verification

def test_verify_sqrt2_and_reducible():
    s = encode_group_realization(Q, library_group("C2"))
    good = parse_witness(bundled_witness("C2_Q_x2-2.wit"), s.domain)
    assert verify_witness(s, good).accepted
    bad = parse_witness(bundled_witness("C2_Q_x2-4.wit"), s.domain)
    rep = verify_witness(s, bad)
    assert rep.equations_ok and not rep.accepted
    assert any("irreducible" in line and "x - 2" in line for line in rep.failures())


def test_verify_missing_variable_is_coverage_error():
    s = encode_group_realization(Q, library_group("C2"))
    with pytest.raises(CoverageError):
        verify_witness(s, {"a[0][0]": -2})


def test_witness_text_round_trip():
    s = encode_group_realization(Q, library_group("C3"))
    w = parse_witness(bundled_witness("C3_Q_x3-3x+1.wit"), s.domain)
    again = parse_witness(w.to_text(s.variables), s.domain)
    assert again.values == w.values


# ---------------------------------------------------------------- brute force

def small_system(p, names, eqs):
    reg = make_registry(*names)
    s = DiophSystem(RingDescriptor(F(p)), reg)
    s.equations = [s.poly(e) for e in eqs]
    return s


def test_brute_inverse_of_two():
    rep = brute_force_enumerate(small_system(5, ["x", "w"], ["w*x - 1", "x - 2"]))
    assert rep.status == "solvable-with-witness"
    assert rep.witnesses[0].values == {"x": 2, "w": 3}


def test_brute_no_root_over_f2():
    rep = brute_force_enumerate(small_system(2, ["x"], ["x^2 + x + 1"]))
    assert rep.status == "unsolvable-proven" and rep.search_space == 2


def test_brute_c2_over_f2():
    s = encode_disequation(encode_group_realization(RingDescriptor.parse("Fp p=2"),
                                                    library_group("C2")))
    assert len(s.variables) == 7
    rep = brute_force_enumerate(s)
    assert rep.search_space == 128 and rep.solvable
    for w in rep.witnesses:
        assert (w.values["a[0][0]"], w.values["a[1][0]"]) == (1, 1)
        assert verify_witness(s, w).accepted


def test_brute_cap():
    s = small_system(5, [f"x{i}" for i in range(9)], ["x0"])
    with pytest.raises(CapExceeded) as exc:
        brute_force_enumerate(s)
    assert exc.value.required == 5 ** 9


# ---------------------------------------------------------------- structured

def test_structured_c2_over_f5_counts():
    g = library_group("C2")
    rep = structured_solve_finite_field(F5, g, system=encode_group_realization(F5, g),
                                        first_only=False)
    assert rep.solvable and rep.solutions == 10
    assert len({w.values["a[0][0]"] * 5 + w.values["a[1][0]"] for w in rep.witnesses}) == 10


def test_structured_klein_unsolvable_over_f5():
    rep = structured_solve_finite_field(F5, library_group("C2xC2"))
    assert rep.status == "unsolvable-proven" and rep.search_space == 625


def test_structured_c3_over_f2():
    g = library_group("C3")
    f2 = RingDescriptor.parse("Fp p=2")
    rep = structured_solve_finite_field(f2, g, system=encode_group_realization(f2, g),
                                        first_only=False)
    coeffs = {tuple(w.values[f"a[{i}][0]"] for i in range(3)) for w in rep.witnesses}
    assert (1, 1, 0) in coeffs and coeffs <= {(1, 1, 0), (1, 0, 1)}


@pytest.mark.parametrize("p, name", [(2, "C2"), (3, "C2"), (2, "C3"), (2, "C1"), (3, "C1")])
def test_brute_and_structured_agree(p, name):
    ring = RingDescriptor.parse(f"Fp p={p}")
    g = library_group(name)
    sys_ = encode_disequation(encode_group_realization(ring, g))
    raw = brute_force_enumerate(sys_)
    structured = structured_solve_finite_field(ring, g, system=sys_)
    assert raw.status == structured.status


def test_structured_subgroup_c2_in_c4():
    c4, c2 = library_group("C4"), library_group("C2")
    s = encode_subgroup_problem(F5, c4, c2)
    rep = structured_solve_subgroup(F5, c4, c2, system=s)
    assert rep.solvable and rep.solutions == 1


def test_automorphism_c2_degree_two():
    h = library_group("C2")
    s = encode_automorphism_problem(F5, h, 2)
    assert structured_solve_automorphism(F5, h, 2, system=s).solvable


def test_automorphism_invalid_candidates_rejected():
    c1 = library_group("C1")
    s = encode_automorphism_problem(F5, c1, 2)
    assert structured_solve_automorphism(F5, c1, 2, system=s).status == "unsolvable-proven"
    vals = automorphism_candidate(5, c1, 2, 2)
    assert not verify_witness(s, complete_witness(s, vals)).accepted


def test_structured_witness_survives_round_trip():
    g = library_group("C4")
    s = encode_group_realization(F5, g)
    rep = structured_solve_finite_field(F5, g, system=s)
    again = parse_system(s.to_text())
    assert verify_witness(again, rep.witnesses[0]).accepted


# ---------------------------------------------------------------- kernels

@pytest.fixture
def both_paths(monkeypatch):
    def run(fn):
        monkeypatch.setenv("DIOPHGAL_DISABLE_NUMBA", "1")
        assert not kernels.numba_enabled()
        slow = fn()
        monkeypatch.setenv("DIOPHGAL_DISABLE_NUMBA", "0")
        fast = fn()
        return slow, fast
    return run


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
@pytest.mark.parametrize("p, d", [(2, 8), (3, 5), (5, 4)])
def test_kernel_irreducibility_agrees(both_paths, p, d):
    polys = kernels.all_monic(p, d)
    slow, fast = both_paths(lambda: kernels.batch_irreducible(polys, p))
    assert np.array_equal(np.asarray(slow, bool), np.asarray(fast, bool))
    trial = [fp.is_irreducible_trial(tuple(int(c) for c in row), p) for row in polys]
    assert np.array_equal(np.asarray(fast, bool), np.array(trial))


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_kernel_satisfying_flags_agree(both_paths):
    s = encode_group_realization(RingDescriptor.parse("Fp p=3"), library_group("C2"))
    compiled = compile_system(s)
    total = 3 ** len(s.variables)
    slow, fast = both_paths(lambda: kernels.satisfying_flags(0, total, 3, compiled))
    assert np.array_equal(np.asarray(slow, bool), np.asarray(fast, bool))
    assert np.asarray(fast, bool).any()
