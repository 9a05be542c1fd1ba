from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisor_count

import oracle
from snideal import build_ring
from snideal.ideals import (
    Ideal,
    MultSet,
    all_ideals,
    all_ideals_generic,
    colon,
    ideal_from_json,
    ideal_generate,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    is_disjoint,
    is_superfluous,
    multset_close,
    multset_from_json,
    radical,
    saturation,
    unit_ideal,
    unit_multset,
    zero_ideal,
)

Z12 = build_ring({"zn": 12})


def gen(r, *g):
    return ideal_generate(r, g)


def test_generate_examples():
    assert gen(Z12, 4).elements == (0, 4, 8)
    assert gen(Z12).elements == (0,)
    assert gen(Z12, 2, 3).elements == tuple(range(12))


def test_all_ideals_examples():
    assert [i.elements for i in all_ideals(Z12)] == [
        gen(Z12, d).elements for d in (0, 6, 4, 3, 2, 1)
    ]
    assert len(all_ideals(build_ring({"zn": 6}))) == 4
    z2z2 = build_ring({"product": [{"zn": 2}, {"zn": 2}]})
    assert sorted(i.elements for i in all_ideals(z2z2)) == [(0,), (0, 1), (0, 1, 2, 3), (0, 2)]


def test_radical_examples():
    assert radical(gen(Z12, 4)).elements == gen(Z12, 2).elements
    assert radical(zero_ideal(Z12)).elements == (0, 6)
    assert radical(unit_ideal(Z12)).elements == tuple(range(12))


def test_colon_examples():
    four = gen(Z12, 4)
    assert colon(four, 3).elements == four.elements
    assert colon(gen(Z12, 6), 3).elements == gen(Z12, 2).elements
    assert colon(four, 1).elements == four.elements


def test_arithmetic_examples():
    assert ideal_sum(gen(Z12, 4), gen(Z12, 6)).elements == gen(Z12, 2).elements
    assert ideal_intersect(gen(Z12, 4), gen(Z12, 6)).elements == (0,)
    assert ideal_product(gen(Z12, 4), unit_ideal(Z12)).elements == (0, 4, 8)


def test_superfluous_examples():
    assert is_superfluous(gen(Z12, 6)).verdict
    res = is_superfluous(gen(Z12, 2))
    assert not res.verdict and res.witness.elements == gen(Z12, 3).elements
    assert is_superfluous(zero_ideal(Z12)).verdict


def test_multset_examples():
    assert multset_close(Z12, [3]).elements == (1, 3, 9)
    assert multset_close(Z12, [2]).elements == (1, 2, 4, 8)
    assert multset_close(Z12, []).elements == (1,)


def test_saturation_examples():
    assert saturation(multset_close(Z12, [3])).elements == (1, 3, 5, 7, 9, 11)
    z5 = build_ring({"zn": 5})
    assert saturation(multset_close(z5, [])).elements == (1, 2, 3, 4)
    u = unit_multset(Z12)
    assert saturation(u).elements == u.elements


def test_disjointness_examples():
    four = gen(Z12, 4)
    assert is_disjoint(multset_close(Z12, [3]), four)
    assert not is_disjoint(multset_close(Z12, [2]), four)
    assert is_disjoint(multset_close(Z12, [3]), zero_ideal(Z12))
    assert not is_disjoint(multset_close(Z12, [6]), zero_ideal(Z12))


def test_multset_may_hold_zero():
    s = multset_close(build_ring({"zn": 4}), [2])
    assert s.elements == (0, 1, 2)
    assert s.contains_zero


def test_json_forms():
    assert ideal_from_json({"gens": [4]}, Z12).elements == (0, 4, 8)
    assert ideal_from_json({"elements": [0, 6]}, Z12).elements == (0, 6)
    assert multset_from_json({"seed": [3]}, Z12).elements == (1, 3, 9)
    with pytest.raises(ValueError):
        ideal_from_json({"elements": [0, 5]}, Z12)
    with pytest.raises(ValueError):
        MultSet.from_elements(Z12, [1, 5, 7])


def test_from_elements_validates():
    with pytest.raises(ValueError):
        Ideal.from_elements(Z12, [0, 4])


@pytest.mark.parametrize("n", range(2, 201))
def test_zn_fast_path_matches_generic(n):
    r = build_ring({"zn": n})
    fast = [i.elements for i in all_ideals(r)]
    assert len(fast) == divisor_count(n)
    assert sorted(fast) == sorted(i.elements for i in all_ideals_generic(r))


@pytest.mark.parametrize("a, b", [(2, 2), (2, 4), (4, 4), (3, 6), (2, 9), (6, 6), (4, 8)])
def test_product_ideals_match_oracle(a, b):
    r = build_ring({"product": [{"zn": a}, {"zn": b}]})
    got = sorted(i.elements for i in all_ideals(r))
    want = sorted(tuple(sorted(i)) for i in oracle.ideals(oracle.zn_product(a, b)))
    assert got == want


# --- properties -------------------------------------------------------------

rings = st.sampled_from(
    [{"zn": n} for n in (6, 8, 12, 18, 24, 30, 36)]
    + [{"product": [{"zn": a}, {"zn": b}]} for a, b in ((2, 4), (3, 6), (4, 6), (2, 12))]
)


def _ring_and_elements(draw, count):
    r = build_ring(draw(rings))
    xs = draw(st.lists(st.integers(0, r.order - 1), max_size=count))
    return r, xs


@st.composite
def ring_gens(draw):
    return _ring_and_elements(draw, 3)


def _is_ideal(i: Ideal) -> bool:
    r = i.ring
    a = i.array
    sums = np.asarray(r._add(a[:, None], a[None, :]))
    return bool(i.mask[sums].all() and i.mask[r.mul_table[:, a]].all() and i.mask[r.zero])


@settings(max_examples=60, deadline=None)
@given(ring_gens())
def test_generate_idempotent_and_closed(data):
    r, xs = data
    i = ideal_generate(r, xs)
    assert _is_ideal(i)
    assert ideal_generate(r, i.elements).elements == i.elements
    assert set(xs) <= set(i.elements)


@settings(max_examples=60, deadline=None)
@given(ring_gens(), st.integers(0, 10**6))
def test_colon_and_radical_laws(data, pick):
    r, xs = data
    i = ideal_generate(r, xs)
    s = pick % r.order
    c = colon(i, s)
    assert set(i.elements) <= set(c.elements)
    assert colon(i, r.one).elements == i.elements
    assert radical(radical(i)).elements == radical(i).elements
    assert _is_ideal(c) and _is_ideal(radical(i))


@settings(max_examples=60, deadline=None)
@given(ring_gens())
def test_saturation_laws(data):
    r, xs = data
    s = multset_close(r, xs)
    sat = saturation(s)
    assert set(s.elements) <= set(sat.elements)
    assert saturation(sat).elements == sat.elements
    assert r.one in s.elements


@settings(max_examples=40, deadline=None)
@given(ring_gens())
def test_multset_and_saturation_match_oracle(data):
    r, xs = data
    spec = r.spec.to_json()
    o = oracle.zn(spec["zn"]) if "zn" in spec else oracle.zn_product(
        spec["product"][0]["zn"], spec["product"][1]["zn"]
    )
    s = multset_close(r, xs)
    assert set(s.elements) == oracle.mult_closure(o, xs)
    assert set(saturation(s).elements) == oracle.saturation(o, set(s.elements))
    i = ideal_generate(r, xs)
    assert set(i.elements) == oracle.ideal_closure(o, xs)
    assert set(radical(i).elements) == oracle.radical(o, set(i.elements))
