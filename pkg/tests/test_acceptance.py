"""End-to-end acceptance checks; each prints one PASS/FAIL line in the summary."""

import random
import time
from itertools import product

from conftest import F, make_registry
from helpers import bundled_witness, quotient_zero, zero_set
from diophgal.algebra import MultiPoly, RingDescriptor
from diophgal.cli import SCENARIOS, main
from diophgal.encoder import (DiophSystem, conjoin_single, encode_automorphism_problem,
                              encode_disequation, encode_group_realization, eliminate_generator)
from diophgal.groups import (LIBRARY_NAMES, conjugates_of_subgroup, library_group, normalizer,
                             subgroups_of_order)
from diophgal.oracle import (automorphism_candidate, brute_force_enumerate, complete_witness,
                             factor_over_prime_field, galois_probe_rationals, parse_witness,
                             structured_solve_automorphism, structured_solve_finite_field,
                             verify_witness)
from diophgal.oracle.factor import monic_of_degree

Q = RingDescriptor.parse("Q")
F5 = RingDescriptor.parse("Fp p=5")


def test_criterion_1_finite_field_realization(criterion):
    done = criterion(1, "finite-field realization: cyclic solvable, C2xC2 unsolvable, raw = structured")
    t0 = time.perf_counter()
    for p in (2, 3, 5):
        ring = RingDescriptor.parse(f"Fp p={p}")
        for name in ("C1", "C2", "C3", "C4", "C2xC2"):
            g = library_group(name)
            system = encode_group_realization(ring, g)
            rep = structured_solve_finite_field(ring, g, system=system)
            expected = "solvable-with-witness" if g.is_cyclic() else "unsolvable-proven"
            assert rep.status == expected, (p, name, rep.note)
            for w in rep.witnesses:
                assert verify_witness(system, w).accepted
    f2 = RingDescriptor.parse("Fp p=2")
    raw_system = encode_disequation(encode_group_realization(f2, library_group("C2")))
    raw = brute_force_enumerate(raw_system)
    assert raw.search_space <= 2 ** 7
    assert raw.status == structured_solve_finite_field(f2, library_group("C2")).status
    elapsed = time.perf_counter() - t0
    assert elapsed < 10
    done(f"{elapsed:.2f} s")


def test_criterion_2_rational_witnesses(criterion):
    done = criterion(2, "rational witnesses verify exactly; x^3 - 2 not Galois")
    t0 = time.perf_counter()
    for group, wit in (("C2", "C2_Q_x2-2.wit"), ("C3", "C3_Q_x3-3x+1.wit"),
                       ("C4", "C4_Q_cyclotomic5.wit")):
        system = encode_group_realization(Q, library_group(group))
        rep = verify_witness(system, parse_witness(bundled_witness(wit), system.domain))
        assert rep.accepted and all(r == 0 for r in rep.residuals), (group, rep.failures())
    # the literal cubic x^3 - 3x - 1 paired with x -> x^2 - 2 leaves a nonzero residual
    system = encode_group_realization(Q, library_group("C3"))
    w = parse_witness(bundled_witness("C3_Q_x3-3x+1.wit"), system.domain)
    w.values["a[0][0]"] = -1
    literal = verify_witness(system, w)
    assert not literal.accepted and -2 in literal.residuals
    assert galois_probe_rationals((-2, 0, 0, 1)).status == "not-galois-certified"
    elapsed = time.perf_counter() - t0
    assert elapsed < 5
    done(f"{elapsed:.2f} s; literal x^3 - 3x - 1 with x^2 - 2 rejected, residual -2")


def _random_poly(s, rng, names, gen, d):
    acc = MultiPoly.zero(s.registry, s.domain)
    for _ in range(rng.randint(1, 4)):
        term = s.poly(str(rng.randint(1, s.domain.p - 1)))
        for n in names:
            term = term * s.var(n) ** rng.randint(0, 2)
        acc = acc + term * s.var(gen) ** rng.randint(0, d - 1)
    return acc


def _system(p, names):
    return DiophSystem(RingDescriptor(F(p)), make_registry(*names))


def test_criterion_3_pass_equivalence(criterion):
    done = criterion(3, "eliminate_generator bijection (F3) and conjoin_single zero sets (F3, F5)")
    rng = random.Random(31337)
    names = ["u0", "u1", "u2"]
    failures = 0
    for _ in range(100):
        d = rng.choice((2, 3))
        s = _system(3, names + ["g"])
        modulus = s.var("g") ** d
        for k in range(d):
            modulus = modulus + s.var("g") ** k * rng.randint(0, 2)
        s.equations = [_random_poly(s, rng, names, "g", d) for _ in range(rng.randint(1, 3))]
        out = eliminate_generator(s, "g", modulus)
        before = {pt for pt in product(range(3), repeat=3)
                  if all(quotient_zero(e, modulus, "g", dict(zip(names, pt))) for e in s.equations)}
        failures += before != zero_set(out.equations, names, 3)
    for p in (3, 5):
        for _ in range(100):
            s = _system(p, ["x", "y"])
            s.equations = [_random_poly(s, rng, ["x"], "y", 3) for _ in range(2)]
            g = conjoin_single(s)
            failures += zero_set([g], ["x", "y"], p) != zero_set(s.equations, ["x", "y"], p)
    assert failures == 0
    done("300 instances, 0 failures")


def test_criterion_4_orbit_counting(criterion):
    done = criterion(4, "conjugates * |N(S)|/|S| = [G:S] over the library")
    t0 = time.perf_counter()
    checked = 0
    for name in LIBRARY_NAMES:
        g = library_group(name)
        if g.order > 12:
            continue
        for m in range(1, g.order + 1):
            for s in subgroups_of_order(g, m):
                count, _ = conjugates_of_subgroup(g, s)
                norm = [x for x in range(g.order)
                        if {g.conjugate(y, x) for y in s.elements} == set(s.elements)]
                assert normalizer(g, s).order == len(norm)
                assert count * len(norm) // m == g.order // m, (name, s.elements)
                checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 5
    done(f"{checked} subgroups, {elapsed:.2f} s")


def test_criterion_5_automorphism_problem(criterion):
    done = criterion(5, "automorphism problem over F5: (C3, 3) solvable, (C1, 3) unsolvable")
    t0 = time.perf_counter()
    c3, c1 = library_group("C3"), library_group("C1")
    s3 = encode_automorphism_problem(F5, c3, 3)
    for branch in (3, 6):
        rep = structured_solve_automorphism(F5, c3, 3, system=s3, branch=branch)
        assert rep.solvable, rep.note
    s1 = encode_automorphism_problem(F5, c1, 3)
    rep = structured_solve_automorphism(F5, c1, 3, system=s1)
    assert rep.status == "unsolvable-proven", rep.note
    assert rep.note == "ell=3:0 valid subgroup(s), ell=6:0 valid subgroup(s)"
    # the natural candidate of each branch must be refused by the emitted system
    for ell in (3, 6):
        vals = automorphism_candidate(5, c1, 3, ell)
        assert not verify_witness(s1, complete_witness(s1, vals)).accepted
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    done(f"{elapsed:.2f} s")


def test_criterion_6_irreducible_counts(criterion):
    done = criterion(6, "10 irreducible quadratics over F5, 2 irreducible cubics over F2")

    def count(p, d):
        return sum(1 for f in monic_of_degree(p, d)
                   if factor_over_prime_field(f, p) == [(tuple(f), 1)])

    assert count(5, 2) == 10
    assert count(2, 3) == 2
    done()


ENCODE_RUNS = [
    ["--ring", "Q", "C2"], ["--ring", "Q", "C3"], ["--ring", "Q", "C4"],
    ["--ring", "Fp p=5", "C2"], ["--ring", "Fp p=2", "C2xC2"], ["--ring", "Q", "C1"],
    ["--problem", "subgroup", "--ring", "Fp p=5", "C4", "C2"],
    ["--problem", "subgroup", "--ring", "Q", "C4", "C3"],
    ["--problem", "automorphism", "--ring", "Fp p=5", "C3", "--degree", "3"],
    ["--ring", "Fp p=2", "C2", "--single-equation"],
]


def test_criterion_7_determinism(criterion, tmp_path):
    done = criterion(7, "two encode runs give byte-identical files")
    runs = ENCODE_RUNS + [["--ring", sc.ring, sc.group] for sc in SCENARIOS]
    for k, argv in enumerate(runs):
        a, b = tmp_path / f"{k}a.sys", tmp_path / f"{k}b.sys"
        assert main(["encode", *argv, "--output", str(a)]) == 0
        assert main(["encode", *argv, "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes(), argv
    for run in ("d1", "d2"):
        assert main(["demo", "--output", str(tmp_path / run)]) == 0
    for f in sorted((tmp_path / "d1").iterdir()):
        assert f.read_bytes() == (tmp_path / "d2" / f.name).read_bytes()
    done(f"{len(runs)} encode inputs plus demo outputs")
