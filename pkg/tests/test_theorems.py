from __future__ import annotations

import json

import pytest

from snideal.theorems import REGISTRY, CorpusSpec, check_ids, get_check
from snideal.theorems.instances import canonical, decode, encode
from snideal.theorems.registry import COLLAPSED, CONFIRMED, VIOLATION, Check, Outcome, Parts
from snideal.theorems.report import (
    SEARCHES,
    converse_counterexample_search,
    render_json,
    render_text,
    replay,
    replicate_examples,
    run_all,
    run_check,
)

SMALL = CorpusSpec(
    zn_max=20,
    product_max=36,
    quotient_base_max=24,
    localization_base_max=12,
    idealization_max=64,
    amalgamation_max=64,
    amalgamation_source_max=12,
    full_multset_max=20,
    ideal_pair_max=36,
    family_ring_max=12,
    zn_check_max=60,
    nary_max=24,
    cross_max=24,
)

TINY = CorpusSpec(
    zn_max=12,
    product_max=16,
    quotient_base_max=12,
    localization_base_max=12,
    idealization_max=36,
    amalgamation_max=36,
    amalgamation_source_max=8,
    full_multset_max=12,
    ideal_pair_max=16,
    family_ring_max=8,
    zn_check_max=24,
    nary_max=12,
    cross_max=16,
)

COLLAPSING = {"T-P1", "T-COLON", "T-REG", "T-UN", "T-INTEG", "T-MAX", "T-SUM"}


@pytest.fixture(scope="module")
def small_reports():
    return {r.id: r for r in run_all(SMALL)}


def test_registry_covers_every_claim():
    expected = [
        "T-P1", "T-CHAR", "T-CHAR2", "T-COLON", "T-REG", "T-UN", "T-INTEG", "T-ZN", "T-ZNGEN",
        "T-MAX", "T-PROD", "T-FAM", "T-SUBSET", "T-SAT", "T-LOC", "T-LOC-IFF", "T-HOM", "T-QUOT",
        "T-SUM", "T-CART", "T-CROSS-NEG", "T-CROSS-POS", "T-IDL", "T-ID", "T-AMA", "T-AMA2",
        "T-AMA-CORS",
    ]
    assert check_ids()[: len(expected)] == expected
    assert "C-VALID" in check_ids()


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_no_violations_on_small_corpus(small_reports, cid):
    r = small_reports[cid]
    assert r.instances > 0
    assert r.violations == [], r.violations[:2]
    assert r.skipped == []
    assert r.confirmed > 0


@pytest.mark.parametrize("cid", sorted(COLLAPSING))
def test_collapsed_regime_is_tagged(small_reports, cid):
    assert small_reports[cid].tags.get(COLLAPSED, 0) > 0


def test_zn_check_up_to_500():
    r = run_check("T-ZN", CorpusSpec(zn_max=20, zn_check_max=500))
    assert r.instances > 500 and not r.violations


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("NO-SUCH")
    with pytest.raises(KeyError):
        converse_counterexample_search("NO-SUCH")


def test_examples_replicate():
    r = replicate_examples()
    assert r.instances == 3 and r.confirmed == 3 and not r.violations


def test_subset_converse_finds_seed_first():
    r = converse_counterexample_search("SUBSET-CONVERSE", TINY)
    assert r.witness_count > 0
    first = r.witnesses[0]["instance"]
    assert first.get("seeded") is True
    assert first["ideal"]["ideal"] == [0, 4, 8]
    assert first["big"]["multset"] == [1, 3, 9] and first["small"]["multset"] == [1]


@pytest.mark.parametrize("name", ["AMA-NONEQUIV", "IDEALIZ-CONVERSE"])
def test_other_searches_report_honestly(name):
    r = converse_counterexample_search(name, TINY)
    assert r.instances > 0
    assert r.witness_count == len(r.witnesses) or r.witness_count > len(r.witnesses)
    assert not r.violations


def test_ama_search_includes_z6_duplication_along_three():
    from snideal.theorems.report import _ama_instances

    rings = {json.dumps(encode(i["ring"]), sort_keys=True) for i in _ama_instances(TINY)}
    assert any('"gens": [3]' in k and '"source": {"zn": 6}' in k for k in rings)


def test_reports_are_deterministic():
    a = render_text(run_all(TINY))
    b = render_text(run_all(TINY))
    assert a == b
    assert render_json(run_all(TINY, ["T-P1"]), corpus=TINY) == render_json(run_all(TINY, ["T-P1"]), corpus=TINY)


def test_json_report_shape():
    doc = json.loads(render_json(run_all(TINY, ["T-ZN"]), corpus=TINY))
    assert doc["schema_version"] == 1
    (rep,) = doc["reports"]
    assert rep["id"] == "T-ZN" and rep["violations"] == [] and "elapsed_seconds" not in rep


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_replay_reproduces_outcomes(cid):
    check = get_check(cid)
    for n, inst in enumerate(check.generate(TINY)):
        if n >= 40:
            break
        doc = json.loads(canonical(encode(inst)))
        assert replay(cid, doc).status == check.evaluate(inst).status
        assert canonical(encode(decode(doc))) == canonical(doc)


def test_replay_reproduces_a_violation():
    def generate(c):
        from snideal.theorems.corpus import zn

        yield {"ring": zn(6), "x": 5}

    def evaluate(inst):
        p = Parts()
        p.claim("x is even", True, inst["x"] % 2 == 0)
        return p.outcome()

    REGISTRY["TEST-FAKE"] = Check("TEST-FAKE", "every x is even", generate, evaluate)
    try:
        r = run_check("TEST-FAKE", TINY)
        assert len(r.violations) == 1 and not r.ok
        again = replay("TEST-FAKE", r.violations[0]["instance"])
        assert again.status == VIOLATION
        assert "FAIL" in render_text([r])
    finally:
        del REGISTRY["TEST-FAKE"]


def test_parts_semantics():
    p = Parts()
    assert p.claim("skipped", False, lambda: 1 / 0) is None
    assert p.outcome().status != CONFIRMED
    p.claim("ok", True, True, tag=COLLAPSED)
    out = p.outcome()
    assert out.status == CONFIRMED and out.tags == (COLLAPSED,)
    assert isinstance(out, Outcome)


def test_corpus_json_round_trip():
    assert CorpusSpec.from_json(json.dumps(SMALL.to_json())) == SMALL
    with pytest.raises(ValueError):
        CorpusSpec.from_json({"bogus": 1})
    with pytest.raises(ValueError):
        CorpusSpec(ideal_policy="some")


def test_principal_policy_runs():
    r = run_check("T-P1", CorpusSpec(zn_max=12, product_max=16, ideal_policy="principal"))
    assert r.instances > 0 and not r.violations


@pytest.mark.parametrize("name", sorted(SEARCHES))
def test_search_instances_replay(name):
    _, generate, evaluate = SEARCHES[name]
    for n, inst in enumerate(generate(TINY)):
        if n >= 25:
            break
        assert replay(name, json.loads(canonical(encode(inst)))).status == evaluate(inst).status
