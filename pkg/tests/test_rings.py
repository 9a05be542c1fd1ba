from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from snideal import build_ring, element_class, nilradical, ring_predicates
from snideal.rings import (
    InvalidSpecError,
    OrderCapError,
    ProductRing,
    Zn,
    describe_spec,
    elem_arith,
    spec_from_json,
    verify_axioms,
)


def test_zn_basics():
    r = build_ring({"zn": 12})
    assert r.order == 12
    assert r.one == 1
    assert r.mul(3, 9) == 3
    assert r.pow(6, 2) == 0
    assert r.add(7, 5) == 0


def test_product_order():
    assert build_ring({"product": [{"zn": 12}, {"zn": 4}]}).order == 48


def test_quotient_order():
    assert build_ring({"quotient": {"of": {"zn": 12}, "gens": [4]}}).order == 4


def test_element_classes():
    z12 = build_ring({"zn": 12})
    five = element_class(z12, 5)
    assert five.is_unit and five.is_regular and not five.is_nilpotent
    six = element_class(z12, 6)
    assert six.is_nilpotent and six.nilpotency_index == 2 and six.is_zero_divisor
    three = element_class(build_ring({"zn": 6}), 3)
    assert three.is_zero_divisor and not three.is_nilpotent and not three.is_unit


@pytest.mark.parametrize("n, expected", [(12, (0, 6)), (6, (0,)), (8, (0, 2, 4, 6))])
def test_nilradical_examples(n, expected):
    assert nilradical(build_ring({"zn": n})).elements == expected


@pytest.mark.parametrize(
    "n, field, vnr, un",
    [(5, True, True, True), (6, False, True, False), (8, False, False, True)],
)
def test_ring_predicate_examples(n, field, vnr, un):
    p = ring_predicates(build_ring({"zn": n}))
    assert (p.is_field, p.is_von_neumann_regular, p.is_un_ring) == (field, vnr, un)


def test_spec_round_trip():
    doc = {"product": [{"zn": 4}, {"quotient": {"of": {"zn": 12}, "gens": [4]}}]}
    spec = spec_from_json(doc)
    assert spec_from_json(spec.to_json()) == spec
    assert spec_from_json('{"zn": 7}') == Zn(7)
    assert describe_spec(Zn(12)) == "Z_12"


@pytest.mark.parametrize(
    "doc",
    ['{"zn": "x"}', "[1]", '{"ring": 3}', "not json", '{"quotient": {"gens": [1]}}', '{"zn": 1}'],
)
def test_invalid_specs(doc):
    with pytest.raises((InvalidSpecError, ValueError)):
        build_ring(doc)


def test_element_out_of_range():
    with pytest.raises(IndexError):
        build_ring({"zn": 5}).mul(5, 1)


def test_elem_arith_dispatch():
    r = build_ring({"zn": 12})
    assert elem_arith(r, "sub", 3, 5) == 10
    with pytest.raises(ValueError):
        elem_arith(r, "div", 1, 1)


def test_env_cap(monkeypatch):
    monkeypatch.setenv("SNIDEAL_MAX_ORDER", "50")
    with pytest.raises(OrderCapError):
        build_ring({"zn": 51})
    assert build_ring({"zn": 50}).order == 50


def test_env_cap_rejects_garbage(monkeypatch):
    monkeypatch.setenv("SNIDEAL_MAX_ORDER", "lots")
    with pytest.raises(ValueError):
        build_ring({"zn": 5})


def test_product_indexing_is_little_endian():
    p = build_ring({"product": [{"zn": 3}, {"zn": 4}]})
    assert isinstance(p, ProductRing)
    assert p.element(2, 1) == 2 + 3 * 1
    assert p.components(5) == (2, 1)


def test_axioms_on_derived_rings():
    for doc in (
        {"quotient": {"of": {"zn": 36}, "gens": [6]}},
        {"localization": {"of": {"zn": 12}, "seed": [3]}},
        {"idealization": {"of": {"zn": 6}}},
        {"amalgamation": {"source": {"zn": 6}, "gens": [3]}},
    ):
        rep = verify_axioms(build_ring(doc))
        assert rep.ok and rep.mode == "exhaustive", doc


# --- properties -------------------------------------------------------------

small_n = st.integers(min_value=2, max_value=48)
factor = st.integers(min_value=2, max_value=12)


@settings(max_examples=40, deadline=None)
@given(small_n)
def test_zn_matches_oracle(n):
    r = build_ring({"zn": n})
    o = oracle.zn(n)
    assert set(np.flatnonzero(r.nil_mask)) == oracle.nilpotents(o)
    assert set(np.flatnonzero(r.units_mask)) == oracle.units(o)


@settings(max_examples=30, deadline=None)
@given(factor, factor)
def test_product_matches_oracle(a, b):
    r = build_ring({"product": [{"zn": a}, {"zn": b}]})
    o = oracle.zn_product(a, b)
    xs = np.arange(r.order)
    table = r.mul_table
    assert all(table[x, y] == o.mul(x, y) for x in xs for y in xs[:: max(1, r.order // 12)])
    assert set(np.flatnonzero(r.nil_mask)) == oracle.nilpotents(o)
    assert set(np.flatnonzero(r.units_mask)) == oracle.units(o)


@settings(max_examples=30, deadline=None)
@given(factor, factor)
def test_regular_iff_unit(a, b):
    r = build_ring({"product": [{"zn": a}, {"zn": b}]})
    assert np.array_equal(~r.zero_divisor_mask, r.units_mask)


@settings(max_examples=30, deadline=None)
@given(small_n)
def test_nilradical_is_ideal(n):
    r = build_ring({"zn": n})
    nil = np.flatnonzero(r.nil_mask)
    sums = r._add(nil[:, None], nil[None, :])
    assert r.nil_mask[np.asarray(sums)].all()
    assert r.nil_mask[r.mul_table[:, nil]].all()


@settings(max_examples=30, deadline=None)
@given(factor, factor)
def test_field_implies_vnr_and_un(a, b):
    for r in (build_ring({"zn": a}), build_ring({"product": [{"zn": a}, {"zn": b}]})):
        p = ring_predicates(r)
        if p.is_field:
            assert p.is_von_neumann_regular and p.is_un_ring
