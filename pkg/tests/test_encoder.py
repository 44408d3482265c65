import random
from itertools import product

import pytest

from conftest import QQ, ZZ, F, make_registry
from helpers import bundled_witness, quotient_zero, zero_set
from diophgal.algebra import MultiPoly, RingDescriptor
from diophgal.encoder import (Disequation, DiophSystem, PredicateConstraint, ZeroForm,
                              conjoin_single, disjoin, encode_automorphism_problem,
                              encode_disequation, encode_galois_set, encode_group_realization,
                              encode_subgroup_problem, eliminate_generator,
                              irreducible_definition_fp, nonzero_definition, parse_system,
                              splice_definition)
from diophgal.errors import CapExceeded, ContractViolation, StructuralError
from diophgal.groups import library_group
from diophgal.oracle import brute_force_enumerate, parse_witness, verify_witness

F5 = RingDescriptor.parse("Fp p=5")
Q = RingDescriptor.parse("Q")


def system_over(domain, names, eqs=(), role="auxiliary"):
    reg = make_registry(*names, role=role)
    s = DiophSystem(RingDescriptor(domain), reg)
    s.equations = [s.poly(e) for e in eqs]
    return s


def c2_values(a0, s0, s1, t=1):
    return {"a[0][0]": a0, "a[1][0]": 0, "t": t, "b[1][0][0]": s0, "b[1][1][0]": s1}


# ---------------------------------------------------------------- galois set / realization

def test_galois_set_degree_one_is_bare_predicate():
    for spec in ("Q", "Fp p=5", "Z"):
        s = encode_galois_set(RingDescriptor.parse(spec), 1)
        assert s.equations == [] and s.disequations == []
        assert [p.kind for p in s.predicates] == ["irreducible"]
        for c in (0, 1, 3):
            assert verify_witness(s, {"a[0][0]": c}).accepted


def test_galois_set_zero_degree_rejected():
    with pytest.raises(ContractViolation):
        encode_galois_set(Q, 0)


def test_galois_set_f5_quadratic_witness():
    s = encode_galois_set(F5, 2)
    assert verify_witness(s, c2_values(2, 0, -1)).accepted


def test_galois_set_rational_sqrt2():
    s = encode_galois_set(Q, 2)
    rep = verify_witness(s, c2_values(-2, 0, -1))
    assert rep.accepted and all(r == 0 for r in rep.residuals)


def test_trivial_group_matches_galois_set():
    for ring in (Q, F5):
        assert (encode_group_realization(ring, library_group("C1")).equations
                == encode_galois_set(ring, 1).equations)


def test_c2_table_equation_over_f5():
    s = encode_group_realization(F5, library_group("C2"))
    assert verify_witness(s, c2_values(2, 0, -1)).accepted
    # the identity map is a root too, but collides with beta's own bundle
    rep = verify_witness(s, c2_values(2, 0, 1))
    assert not rep.accepted


def test_c3_over_q_bundled_witness():
    s = encode_group_realization(Q, library_group("C3"))
    w = parse_witness(bundled_witness("C3_Q_x3-3x+1.wit"), s.domain)
    rep = verify_witness(s, w)
    assert rep.accepted and all(r == 0 for r in rep.residuals)


def test_c3_swapped_conjugates_fail_table():
    # sigma_1 o sigma_1 must be sigma_2; swapping the bundles keeps roots but C3 is
    # abelian with both orders 3, so the swapped table still holds. Break it instead.
    s = encode_group_realization(Q, library_group("C3"))
    w = parse_witness(bundled_witness("C3_Q_x3-3x+1.wit"), s.domain)
    w.values["b[2][0][0]"] = 0
    w.values["b[2][1][0]"] = 1
    w.values["b[2][2][0]"] = 0
    assert not verify_witness(s, w).accepted


@pytest.mark.parametrize("group", ["C2", "C3", "C4", "C2xC2", "S3"])
def test_monotone_structure(group):
    g = library_group(group)
    for ring in (Q, F5):
        base = {e.to_text() for e in encode_galois_set(ring, g.order).equations}
        full = {e.to_text() for e in encode_group_realization(ring, g).equations}
        assert base <= full


def test_lowering_routes_agree_on_witness():
    s_exp = encode_group_realization(F5, library_group("C2"), lowering="expand")
    s_aux = encode_group_realization(F5, library_group("C2"), lowering="aux")
    from diophgal.oracle import complete_witness
    vals = c2_values(2, 0, -1)
    for s in (s_exp, s_aux):
        assert verify_witness(s, complete_witness(s, vals)).accepted


# ---------------------------------------------------------------- subgroup / automorphism

def test_subgroup_trivial_h_is_realization():
    g = library_group("C3")
    s = encode_subgroup_problem(Q, g, library_group("C1"))
    w = parse_witness(bundled_witness("C3_Q_x3-3x+1.wit"), s.domain)
    from diophgal.oracle import complete_witness
    assert verify_witness(s, complete_witness(s, w.values)).accepted


def test_subgroup_lagrange_sentinel():
    s = encode_subgroup_problem(Q, library_group("C4"), library_group("C3"))
    assert s.variables == [] and len(s.equations) == 1 and s.equations[0] == 1


def test_subgroup_cap():
    with pytest.raises(CapExceeded):
        encode_subgroup_problem(Q, library_group("C12"), library_group("C2"), max_group_order=8)


def test_automorphism_contract_and_cap():
    with pytest.raises(ContractViolation):
        encode_automorphism_problem(F5, library_group("C2"), 3)
    with pytest.raises(CapExceeded) as exc:
        encode_automorphism_problem(F5, library_group("C1"), 4)
    assert exc.value.required > exc.value.cap


# ---------------------------------------------------------------- disequations

def test_disequation_over_q():
    s = system_over(QQ, ["x"])
    s.disequations = [Disequation((s.var("x"),), (s.poly("0"),))]
    out = encode_disequation(s)
    assert out.disequations == []
    assert out.equations == [out.poly("w[0]*x - 1")]
    assert out.equations[0].evaluate({"x": 2, "w[0]": QQ.coerce(1) / 2}) == 0


def test_disequation_zero_has_no_inverse_over_f5():
    s = system_over(F(5), ["x"])
    s.equations = [s.poly("x")]
    s.disequations = [Disequation((s.var("x"),), (s.poly("0"),))]
    assert brute_force_enumerate(encode_disequation(s)).status == "unsolvable-proven"


def test_tuple_disequation_over_f5():
    s = system_over(F(5), [])
    s.disequations = [Disequation((s.poly("1"), s.poly("0")), (s.poly("1"), s.poly("3")))]
    out = encode_disequation(s)
    rep = brute_force_enumerate(out)
    assert rep.solutions == 1
    (w,) = rep.witnesses
    (name,) = w.values
    # the surviving factor belongs to the coordinate that differs: w*(0 - 3) = 1
    assert (w.values[name] * -3) % 5 == 1


def test_tuple_disequation_equal_sides_is_unsolvable():
    s = system_over(F(3), ["x"])
    s.disequations = [Disequation((s.var("x"),), (s.var("x"),))]
    assert brute_force_enumerate(encode_disequation(s)).status == "unsolvable-proven"


def test_disequation_over_z_emits_nonzero_predicate():
    s = system_over(ZZ, ["x"])
    s.disequations = [Disequation((s.var("x"),), (s.poly("0"),))]
    out = encode_disequation(s)
    assert [p.kind for p in out.predicates] == ["nonzero"]


# ---------------------------------------------------------------- eliminate_generator

def test_eliminate_constant_in_generator():
    s = system_over(QQ, ["x", "c", "g"], ["x - c"])
    out = eliminate_generator(s, "g", s.poly("g^2 - 2"))
    assert [e.to_text() for e in out.equations] == [out.poly("x - c").to_text()]
    assert "g" not in out.variables


def test_eliminate_one_reduction_step():
    s = system_over(QQ, ["u", "v", "g"], ["g*u + g^2*v"])
    with pytest.raises(ContractViolation):
        eliminate_generator(s, "g", s.poly("g^2 - 2"))
    out = eliminate_generator(s, "g", s.poly("g^2 - 2"), reduce=True)
    assert out.equations == [out.poly("2*v"), out.poly("u")]


def random_poly(s, rng, names, gen, d):
    acc = MultiPoly.zero(s.registry, s.domain)
    for _ in range(rng.randint(1, 4)):
        term = s.poly(str(rng.randint(1, 2)))
        for n in names:
            term = term * s.var(n) ** rng.randint(0, 2)
        acc = acc + term * s.var(gen) ** rng.randint(0, d - 1)
    return acc


def test_eliminate_generator_bijection_f3():
    rng = random.Random(20240601)
    names = ["u0", "u1", "u2"]
    for _ in range(100):
        d = rng.choice((2, 3))
        s = system_over(F(3), names + ["g"])
        modulus = s.var("g") ** d
        for k in range(d):
            modulus = modulus + s.var("g") ** k * rng.randint(0, 2)
        s.equations = [random_poly(s, rng, names, "g", d) for _ in range(rng.randint(1, 2))]
        out = eliminate_generator(s, "g", modulus)
        assert "g" not in out.variables
        before = {pt for pt in product(range(3), repeat=3)
                  if all(quotient_zero(e, modulus, "g", dict(zip(names, pt))) for e in s.equations)}
        after = zero_set(out.equations, names, 3)
        # solutions are the same u-tuples: lift and projection are both the identity
        assert before == after


# ---------------------------------------------------------------- conjoin / disjoin

def test_zero_form_defaults():
    assert ZeroForm.default(QQ).text() == "1*u^2 + 0*u*v + 1*v^2"
    assert ZeroForm.default(F(5)).text() == "1*u^2 + 0*u*v + -2*v^2"
    assert ZeroForm.default(F(2)).text() == "1*u^2 + 1*u*v + 1*v^2"
    with pytest.raises(ContractViolation):
        ZeroForm(F(5), 1, 0, -1)


@pytest.mark.parametrize("dom, expect", [(QQ, "x^2 + y^2"), (F(5), "x^2 - 2*y^2"),
                                         (F(2), "x^2 + x*y + y^2")])
def test_conjoin_two_coordinates(dom, expect):
    s = system_over(dom, ["x", "y"], ["x", "y"])
    g = conjoin_single(s)
    assert g == s.poly(expect)
    if dom.is_prime_field:
        assert zero_set([g], ["x", "y"], dom.p) == {(0, 0)}


def test_conjoin_refuses_unresolved():
    s = system_over(QQ, ["x"], ["x"])
    s.predicates = [PredicateConstraint("irreducible", ("x",), 1)]
    with pytest.raises(ContractViolation):
        conjoin_single(s)
    assert conjoin_single(s, waive_predicates=True) == s.poly("x")
    s.disequations = [Disequation((s.var("x"),), (s.poly("1"),))]
    with pytest.raises(ContractViolation):
        conjoin_single(s, waive_predicates=True)


@pytest.mark.parametrize("p", [3, 5])
def test_conjoin_zero_sets(p):
    rng = random.Random(p * 7919)
    names = ["x", "y"]
    for _ in range(100):
        s = system_over(F(p), names)
        s.equations = [random_poly(s, rng, ["x"], "y", 3) for _ in range(2)]
        g = conjoin_single(s)
        assert zero_set([g], names, p) == zero_set(s.equations, names, p)


def test_disjoin_examples():
    s = system_over(QQ, ["x", "y"])
    assert disjoin([s.var("x"), s.var("y")]) == s.poly("x*y")
    assert disjoin([s.poly("x - 1")]) == s.poly("x - 1")
    t = system_over(F(2), ["x"])
    g = disjoin([t.var("x"), t.poly("x + 1")])
    assert g == t.poly("x^2 + x") and zero_set([g], ["x"], 2) == {(0,), (1,)}
    with pytest.raises(ContractViolation):
        disjoin([])


# ---------------------------------------------------------------- splicing

def test_splice_nonzero_field():
    s = system_over(QQ, ["x"])
    pred = PredicateConstraint("nonzero", ("x",), 0, s.var("x"))
    s.predicates = [pred]
    out = splice_definition(s, pred, nonzero_definition(QQ))
    assert out.predicates == [] and len(out.equations) == 1
    assert out.equations[0] == out.poly("aux[0][0]*x - 1")


def test_splice_irreducible_quadratic_f2():
    s = system_over(F(2), ["c0", "c1"])
    pred = PredicateConstraint("irreducible", ("c0", "c1"), 2)
    s.predicates = [pred]
    out = splice_definition(s, pred, irreducible_definition_fp(F(2), 2))
    rep = brute_force_enumerate(out)
    assert rep.solutions == 1 and rep.witnesses[0].values == {"c0": 1, "c1": 1}


def test_splice_without_auxiliaries_concatenates():
    s = system_over(QQ, ["x", "y"], ["x - y"])
    pred = PredicateConstraint("irreducible", ("x",), 1)
    s.predicates = [pred]
    d = system_over(QQ, ["p"], ["p^2 - 4"])
    out = splice_definition(s, pred, d)
    assert out.variables == ["x", "y"]
    assert out.equations == [out.poly("x - y"), out.poly("x^2 - 4")]


def test_splice_arity_mismatch():
    s = system_over(QQ, ["x", "y"])
    pred = PredicateConstraint("irreducible", ("x", "y"), 2)
    s.predicates = [pred]
    with pytest.raises(StructuralError):
        splice_definition(s, pred, system_over(QQ, ["p"]), parameters=["p"])


def test_integer_nonzero_gadget():
    d = nonzero_definition(ZZ)
    # x*u = (2v - 1)(3w - 1) has integer solutions exactly for x != 0
    (eq,) = d.equations
    box = range(-6, 7)
    for x in range(-6, 7):
        hit = any(eq.evaluate({"x": x, "u": u, "v": v, "w": w})
                  == 0 for u in box for v in box for w in box)
        assert hit == (x != 0), x


# ---------------------------------------------------------------- serialization

SCENARIO_INPUTS = [("igp", "Q", ("C2",)), ("igp", "Q", ("C3",)), ("igp", "Fp p=5", ("C4",)),
                   ("igp", "Fp p=2", ("C2xC2",)), ("igp", "numberfield minpoly=1,0,-2", ("C2",)),
                   ("igp", "Z", ("C2",)), ("subgroup", "Fp p=5", ("C4", "C2")),
                   ("automorphism", "Fp p=5", ("C3",))]


def encode(problem, spec, groups):
    ring = RingDescriptor.parse(spec)
    gs = [library_group(g) for g in groups]
    if problem == "igp":
        return encode_group_realization(ring, gs[0])
    if problem == "subgroup":
        return encode_subgroup_problem(ring, *gs)
    return encode_automorphism_problem(ring, gs[0], 3)


@pytest.mark.parametrize("problem, spec, groups", SCENARIO_INPUTS)
def test_round_trip_and_determinism(problem, spec, groups):
    text = encode(problem, spec, groups).to_text()
    assert encode(problem, spec, groups).to_text() == text
    assert parse_system(text).to_text() == text
