from __future__ import annotations

from itertools import combinations
from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primefactors

import oracle
from snideal import build_ring, nilradical
from snideal.classify import (
    ALL_DISJOINT,
    NONE,
    ImproperIdealError,
    NotDisjointError,
    all_s_n_ideals,
    classify_ideal,
    is_n_ideal,
    is_primary,
    is_prime,
    maximal_s_n_ideals,
    s_n_ideal_pair_witnesses,
    s_n_nary_holds,
    s_n_nary_ideal_holds,
    s_witnesses,
    zn_brute_divisors,
    zn_fast_classify,
)
from snideal.ideals import all_ideals, ideal_generate, is_disjoint, multset_close, unit_multset

Z12 = build_ring({"zn": 12})
S3 = multset_close(Z12, [3])


def gen(r, *g):
    return ideal_generate(r, g)


def _oracle_ring(r):
    spec = r.spec.to_json()
    if "zn" in spec:
        return oracle.zn(spec["zn"])
    a, b = (f["zn"] for f in spec["product"])
    return oracle.zn_product(a, b)


def _cases(r):
    """Every (ideal, multset) pair with the multset generated by one element."""
    seen = set()
    for x in range(r.order):
        s = multset_close(r, [x])
        if s.key in seen:
            continue
        seen.add(s.key)
        for i in all_ideals(r):
            if is_disjoint(s, i):
                yield i, s


ORACLE_RINGS = [{"zn": n} for n in (2, 4, 6, 8, 9, 12, 16, 18, 20, 24, 30, 36)] + [
    {"product": [{"zn": a}, {"zn": b}]} for a, b in ((2, 2), (2, 4), (4, 2), (2, 6), (4, 4), (3, 4), (2, 9))
]


# --- worked examples --------------------------------------------------------


def test_e1():
    four = gen(Z12, 4)
    v = s_witnesses("S-n", four, S3)
    assert v.holds and v.witnesses == (3, 9)
    n = is_n_ideal(four)
    assert not n.holds and n.counterexample == (2, 2)


def test_e3():
    two = gen(Z12, 2)
    assert is_prime(two).holds
    assert s_witnesses("S-prime", two, S3).holds
    v = s_witnesses("S-n", two, S3)
    assert v.holds and 3 in v.witnesses


def test_six_in_z12_is_s_n():
    assert s_witnesses("S-n", gen(Z12, 6), S3).holds


def test_classification_bundle():
    c = classify_ideal(gen(Z12, 4), S3)
    assert c.s_n.holds and not c.n_ideal.holds and not c.s_prime.holds and c.primary.holds
    assert c.nil_annihilating == (3, 9)
    assert {s: x.elements for s, x in c.colons.items()} == {3: (0, 4, 8), 9: (0, 4, 8)}
    f = build_ring({"zn": 7})
    cf = classify_ideal(gen(f), multset_close(f, []))
    assert cf.prime.holds and cf.n_ideal.holds


def test_not_n_ideal_in_z6():
    z6 = build_ring({"zn": 6})
    assert not is_n_ideal(gen(z6, 2)).holds
    assert not any(is_n_ideal(i).holds for i in all_ideals(z6) if i.is_proper)


def test_enumeration_examples():
    assert [i.elements for i in all_s_n_ideals(Z12, S3)] == [
        gen(Z12, d).elements for d in (0, 6, 4, 2)
    ]
    z30 = build_ring({"zn": 30})
    assert all_s_n_ideals(z30, multset_close(z30, [2])) == []
    z8 = build_ring({"zn": 8})
    assert all_s_n_ideals(z8, multset_close(z8, [2])) == []


def test_maximal_examples():
    assert [i.elements for i in maximal_s_n_ideals(Z12, S3)] == [gen(Z12, 2).elements]
    z6 = build_ring({"zn": 6})
    assert [i.elements for i in maximal_s_n_ideals(z6, multset_close(z6, [3]))] == [(0, 2, 4)]
    z30 = build_ring({"zn": 30})
    assert maximal_s_n_ideals(z30, multset_close(z30, [2])) == []


def test_z6_s_n_ideals():
    z6 = build_ring({"zn": 6})
    assert [i.elements for i in all_s_n_ideals(z6, multset_close(z6, [3]))] == [(0,), (0, 2, 4)]


def test_errors():
    with pytest.raises(NotDisjointError):
        s_witnesses("S-n", gen(Z12, 4), multset_close(Z12, [2]))
    with pytest.raises(ImproperIdealError):
        is_prime(gen(Z12, 1))
    with pytest.raises(ValueError):
        s_witnesses("S-bogus", gen(Z12, 4), S3)
    with pytest.raises(ValueError):
        s_n_nary_holds(gen(Z12, 4), S3, arity=1)


# --- Z_n closed form --------------------------------------------------------


def test_zn_fast_examples():
    c = zn_fast_classify(12, [3])
    assert c.regime == ALL_DISJOINT and c.ideal_labels() == ["<0>", "<6>", "<4>", "<2>"]
    assert zn_fast_classify(12, [2]).ideal_labels() == ["<0>", "<6>", "<3>"]
    assert zn_fast_classify(8, [2]).regime == NONE
    assert zn_fast_classify(30, [2]).regime == NONE
    assert zn_fast_classify(30, [2, 3]).regime == ALL_DISJOINT
    assert zn_fast_classify(30, [2, 3, 5]).regime == NONE


@pytest.mark.parametrize("n, primes", [(1, [2]), (12, []), (12, [4]), (12, [5]), (12, [7])])
def test_zn_fast_errors(n, primes):
    with pytest.raises(ValueError):
        zn_fast_classify(n, primes)


@pytest.mark.parametrize("n", range(2, 121))
def test_zn_fast_matches_brute(n):
    ps = primefactors(n)
    for size in range(1, len(ps) + 1):
        for combo in combinations(ps, size):
            assert zn_brute_divisors(n, combo) == zn_fast_classify(n, combo).divisors, (n, combo)


@pytest.mark.parametrize("n, primes", [(12, (3,)), (12, (2,)), (30, (2, 3)), (18, (2,)), (8, (2,)), (30, (5,))])
def test_zn_fast_matches_oracle(n, primes):
    o = oracle.zn(n)
    s = oracle.mult_closure(o, primes)
    found = oracle.s_n_ideals(o, s)
    expected = sorted((n if i == {0} else min(x for x in i if x) for i in found), reverse=True)
    # generator of <d> is its least positive element, which divides n
    assert tuple(expected) == zn_fast_classify(n, primes).divisors


# --- oracle agreement -------------------------------------------------------


@pytest.mark.parametrize("doc", ORACLE_RINGS, ids=lambda d: str(d))
def test_s_kinds_match_oracle(doc):
    r = build_ring(doc)
    o = _oracle_ring(r)
    for i, s in _cases(r):
        iset, sset = set(i.elements), set(s.elements)
        for kind in ("S-n", "S-prime", "S-primary"):
            assert s_witnesses(kind, i, s).witnesses == tuple(oracle.s_witnesses(o, kind, iset, sset)), (
                kind, i.elements, s.elements,
            )


@pytest.mark.parametrize("doc", ORACLE_RINGS, ids=lambda d: str(d))
def test_n_ideal_matches_oracle(doc):
    r = build_ring(doc)
    o = _oracle_ring(r)
    for i in all_ideals(r):
        if not i.is_proper:
            continue
        v = is_n_ideal(i)
        assert v.holds == oracle.is_n_ideal(o, set(i.elements))
        assert v.counterexample == oracle.least_n_counterexample(o, set(i.elements))


@pytest.mark.parametrize("doc", ORACLE_RINGS[:9] + ORACLE_RINGS[-4:], ids=lambda d: str(d))
def test_ideal_pair_form_matches_oracle(doc):
    r = build_ring(doc)
    o = _oracle_ring(r)
    for i, s in _cases(r):
        want = tuple(oracle.s_n_ideal_pairs(o, set(i.elements), set(s.elements)))
        assert s_n_ideal_pair_witnesses(i, s) == want
        # the ideal-pair form and the element form pick out the same s
        assert want == s_witnesses("S-n", i, s).witnesses


@pytest.mark.parametrize("doc", [{"zn": n} for n in (4, 6, 8, 12, 16, 18)] + ORACLE_RINGS[-5:], ids=lambda d: str(d))
def test_nary_forms_match_oracle(doc):
    r = build_ring(doc)
    o = _oracle_ring(r)
    for i, s in _cases(r):
        iset, sset = set(i.elements), set(s.elements)
        for arity in (2, 3):
            assert s_n_nary_holds(i, s, arity) == oracle.s_n_nary(o, iset, sset, arity), (arity, i.elements, s.elements)
        assert s_n_nary_ideal_holds(i, s, 3) == oracle.s_n_nary_ideals(o, iset, sset, 3)


def test_nary_form_rejects_four_with_trivial_s():
    # Z_12, I = <4>, S = {1}: 2*2*1 lies in I with no factor nilpotent or in I
    z = Z12
    one = multset_close(z, [])
    assert not s_n_nary_holds(gen(z, 4), one, 3)
    assert not s_witnesses("S-n", gen(z, 4), one).holds


# --- soundness and structural properties ------------------------------------

RINGS = st.sampled_from(ORACLE_RINGS + [{"zn": n} for n in (10, 14, 27, 28, 40, 48, 60)])


@st.composite
def pairs(draw):
    r = build_ring(draw(RINGS))
    cases = list(_cases(r))
    return draw(st.sampled_from(cases))


def _masks(kind, i):
    ok = i.ring.nil_mask if kind == "S-n" else i.mask
    target = i.radical_mask if kind == "S-primary" else i.mask
    return ok, target


def _refutes(kind, i, s_val, a, b):
    r = i.ring
    ok, target = _masks(kind, i)
    return bool(i.mask[r.mul(a, b)] and not ok[r.mul(s_val, a)] and not target[r.mul(s_val, b)])


def _implication_holds(kind, i, s_val):
    return not any(_refutes(kind, i, s_val, a, b) for a, b in cartesian(range(i.ring.order), repeat=2))


@settings(max_examples=80, deadline=None)
@given(pairs(), st.sampled_from(["S-n", "S-prime", "S-primary"]))
def test_witness_soundness(case, kind):
    i, s = case
    v = s_witnesses(kind, i, s)
    assert v.holds == bool(v.witnesses)
    for w in v.witnesses:
        assert _implication_holds(kind, i, w)
    assert set(v.refutations) == set(s.elements) - set(v.witnesses)
    for sv, (a, b) in v.refutations.items():
        assert _refutes(kind, i, sv, a, b)
    if v.counterexample is not None:
        assert all(_refutes(kind, i, sv, *v.counterexample) for sv in s.elements)


@settings(max_examples=80, deadline=None)
@given(pairs())
def test_n_implies_s_n_implies_s_primary(case):
    i, s = case
    if i.is_proper and is_n_ideal(i).holds:
        assert s_witnesses("S-n", i, s).holds
    if s_witnesses("S-n", i, s).holds:
        assert s_witnesses("S-primary", i, s).holds
        r = i.ring
        # some s sends I into the nilradical
        assert any(r.nil_mask[r.mul_all(sv, i.array)].all() for sv in s.elements)


@settings(max_examples=60, deadline=None)
@given(RINGS)
def test_collapse_inside_units(doc):
    r = build_ring(doc)
    u = unit_multset(r)
    for i in all_ideals(r):
        if i.is_proper:
            assert s_witnesses("S-n", i, u).holds == is_n_ideal(i).holds


@settings(max_examples=60, deadline=None)
@given(RINGS)
def test_nilradical_s_n_iff_s_prime(doc):
    r = build_ring(doc)
    nil = nilradical(r)
    for x in range(r.order):
        s = multset_close(r, [x])
        if is_disjoint(s, nil):
            assert s_witnesses("S-n", nil, s).holds == s_witnesses("S-prime", nil, s).holds


def test_primary_examples():
    assert is_primary(gen(Z12, 4)).holds
    assert not is_primary(gen(Z12, 6)).holds
