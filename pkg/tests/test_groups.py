from itertools import combinations, permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophgal.errors import GroupValidationError, ParseError
from diophgal.groups import (LIBRARY_NAMES, conjugates_of_subgroup, enumerate_injections,
                             library_group, make_subgroup, normalizer, parse_group_text,
                             subgroups_of_order, validate_group)


def one_based(g):
    return (np.array(g.table) + 1).tolist()


def brute_subgroups(g, m):
    """Every m-subset containing the identity that is closed under products."""
    out = []
    for rest in combinations(range(1, g.order), m - 1):
        s = {0, *rest}
        if all(g.mul(a, b) in s for a in s for b in s):
            out.append(frozenset(s))
    return out


def test_c2_valid():
    g = validate_group([[1, 2], [2, 1]], "C2")
    assert g.order == 2 and g.mul(1, 1) == 0


def test_non_latin_rejected():
    with pytest.raises(GroupValidationError) as exc:
        validate_group([[1, 2], [2, 2]])
    assert exc.value.axiom == "latin"


def first_nonassociative_loop(d):
    """Reduced Latin square of order d (identity row/column) that is not associative."""
    rows = [list(range(d))]

    def extend():
        i = len(rows)
        if i == d:
            t = rows
            if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(d) for b in range(d) for c in range(d)):
                return [r[:] for r in rows]
            return None
        for perm in permutations(range(d)):
            if perm[0] != i or any(perm[c] == r[c] for r in rows for c in range(d)):
                continue
            rows.append(list(perm))
            found = extend()
            rows.pop()
            if found:
                return found
        return None

    return extend()


def test_nonassociative_quasigroup_reports_triple():
    t = first_nonassociative_loop(5)
    with pytest.raises(GroupValidationError) as exc:
        validate_group([[v + 1 for v in r] for r in t])
    assert exc.value.axiom == "associativity"
    i, j, k = exc.value.indices
    assert t[t[i][j]][k] != t[i][t[j][k]]


def test_missing_identity():
    with pytest.raises(GroupValidationError) as exc:
        validate_group([[2, 1], [1, 2]])
    assert exc.value.axiom == "identity"


def test_group_file_format():
    g = parse_group_text("# klein\ngroup V order 4\n1 2 3 4\n2 1 4 3\n\n3 4 1 2\n4 3 2 1\n")
    assert g.name == "V" and g.order == 4 and not g.is_cyclic()
    with pytest.raises(ParseError):
        parse_group_text("group V order 3\n1 2\n2 1\n")


@pytest.mark.parametrize("name", LIBRARY_NAMES)
def test_library_valid(name):
    g = library_group(name)
    assert np.array_equal(validate_group(one_based(g)).table, g.table)


def test_library_size():
    assert len(LIBRARY_NAMES) == 18


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([n for n in LIBRARY_NAMES if n != "C1"]), st.data())
def test_single_entry_corruption_rejected(name, data):
    rows = one_based(library_group(name))
    d = len(rows)
    i = data.draw(st.integers(0, d - 1))
    j = data.draw(st.integers(0, d - 1))
    v = data.draw(st.integers(1, d).filter(lambda v: v != rows[i][j]))
    rows[i][j] = v
    with pytest.raises(GroupValidationError):
        validate_group(rows)


@pytest.mark.parametrize("name, m, count", [("S3", 2, 3), ("C4", 2, 1), ("A4", 2, 3),
                                            ("A4", 4, 1), ("A4", 6, 0), ("D4", 2, 5)])
def test_subgroup_counts(name, m, count):
    g = library_group(name)
    subs = subgroups_of_order(g, m)
    assert len(subs) == count == len(brute_subgroups(g, m))


def test_c4_order_two_subgroup():
    (s,) = subgroups_of_order(library_group("C4"), 2)
    assert sorted(s.elements) == [0, 2]


@pytest.mark.parametrize("name", LIBRARY_NAMES)
def test_trivial_subgroup_and_lagrange(name):
    g = library_group(name)
    assert [sorted(s.elements) for s in subgroups_of_order(g, 1)] == [[0]]
    for m in range(1, g.order + 1):
        subs = subgroups_of_order(g, m)
        if g.order % m:
            assert subs == []
        assert {frozenset(s.elements) for s in subs} == set(brute_subgroups(g, m))


def test_conjugate_counts():
    s3 = library_group("S3")
    for s in subgroups_of_order(s3, 2):
        assert conjugates_of_subgroup(s3, s)[0] == 3
    (a3,) = subgroups_of_order(s3, 3)
    assert conjugates_of_subgroup(s3, a3)[0] == 1
    whole = make_subgroup(s3, range(6))
    assert conjugates_of_subgroup(s3, whole)[0] == 1


def test_injection_examples():
    c2, c4, v4 = (library_group(n) for n in ("C2", "C4", "C2xC2"))
    assert enumerate_injections(c2, c4) == [(2,)]
    assert len(enumerate_injections(c2, v4)) == 3
    assert enumerate_injections(library_group("C1"), c4) == [()]
    assert enumerate_injections(library_group("C3"), c4) == []


def brute_injections(h, g):
    out = []
    for images in product(range(1, g.order), repeat=h.order - 1):
        phi = (0,) + images
        if len(set(phi)) < h.order:
            continue
        if all(phi[h.mul(a, b)] == g.mul(phi[a], phi[b])
               for a in range(h.order) for b in range(h.order)):
            out.append(images)
    return out


@pytest.mark.parametrize("hn, gn", [("C2", "S3"), ("C3", "S3"), ("C2", "D4"), ("C2xC2", "D4"),
                                    ("C4", "Q8"), ("C2", "Q8"), ("C3", "A4"), ("C2xC2", "A4"),
                                    ("C3", "C6"), ("S3", "D6")])
def test_injections_match_brute_force(hn, gn):
    h, g = library_group(hn), library_group(gn)
    got = enumerate_injections(h, g)
    assert sorted(got) == sorted(brute_injections(h, g))


def brute_normalizer(g, s):
    return [x for x in range(g.order) if {g.conjugate(y, x) for y in s} == set(s)]


@pytest.mark.parametrize("name", [n for n in LIBRARY_NAMES if library_group(n).order <= 12])
def test_orbit_counting_identity(name):
    g = library_group(name)
    for m in range(1, g.order + 1):
        for s in subgroups_of_order(g, m):
            count, _ = conjugates_of_subgroup(g, s)
            norm = brute_normalizer(g, s.elements)
            assert normalizer(g, s).order == len(norm)
            assert count * (len(norm) // m) == g.order // m
