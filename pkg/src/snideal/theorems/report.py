"""Running checks, collecting reports, and rendering them as text or JSON."""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..classify import is_n_ideal, is_prime, n_ideal_holds, s_witnesses
from ..constructions import AmalgamationRing
from ..ideals import all_ideals, colon, is_disjoint, multset_close
from ..rings import PreconditionError, nilradical
from .checks_constructions import _amalgamations, _idealizations, _j_nil, _submodules
from .checks_core import sn
from .corpus import DEFAULT_CORPUS, CorpusSpec, base_specs, ideals, multsets, ring_from_spec, zn
from .instances import Submodule, canonical, decode, encode
from .registry import CONFIRMED, SKIPPED, VACUOUS, VIOLATION, Outcome, Parts, check_ids, get_check

WITNESS = "witness"
# witness listings in search reports are truncated to this many entries
WITNESS_LIST_MAX = 10


@dataclass
class CheckReport:
    id: str
    claim: str
    instances: int = 0
    confirmed: int = 0
    vacuous: int = 0
    violations: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    witness_count: int = 0
    tags: dict[str, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, *, timing: bool = False) -> dict:
        doc = {
            "id": self.id,
            "claim": self.claim,
            "instances": self.instances,
            "confirmed": self.confirmed,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "skipped": self.skipped,
            "tags": dict(sorted(self.tags.items())),
            "notes": list(self.notes),
        }
        if self.witness_count or self.id in SEARCHES:
            doc["witness_count"] = self.witness_count
            doc["witnesses"] = self.witnesses
        if timing and self.elapsed is not None:
            doc["elapsed_seconds"] = round(self.elapsed, 3)
        return doc


def _collect(report: CheckReport, items: Iterable[dict], evaluate: Callable[[dict], Outcome]) -> CheckReport:
    start = time.perf_counter()
    tags: Counter = Counter()
    violations, skipped, witnesses = [], [], []
    for inst in items:
        report.instances += 1
        try:
            out = evaluate(inst)
        except PreconditionError as exc:
            out = Outcome(SKIPPED, str(exc))
        tags.update(out.tags)
        if out.status == CONFIRMED:
            report.confirmed += 1
        elif out.status == VACUOUS:
            report.vacuous += 1
        elif out.status == VIOLATION:
            violations.append({"instance": encode(inst), "detail": out.detail})
        elif out.status == SKIPPED:
            skipped.append({"instance": encode(inst), "reason": out.detail})
        elif out.status == WITNESS:
            witnesses.append({"instance": encode(inst), "detail": out.detail})
    order = lambda d: canonical(d["instance"])  # noqa: E731
    report.violations = sorted(violations, key=order)
    report.skipped = sorted(skipped, key=order)
    # seeded instances (the known witnesses a search starts from) are listed first
    witnesses.sort(key=lambda d: (not d["instance"].get("seeded", False), order(d)))
    report.witness_count = len(witnesses)
    report.witnesses = witnesses[:WITNESS_LIST_MAX]
    report.tags = dict(tags)
    report.elapsed = time.perf_counter() - start
    return report


def run_check(check_id: str, corpus: CorpusSpec = DEFAULT_CORPUS) -> CheckReport:
    check = get_check(check_id)
    report = CheckReport(check.id, check.claim, notes=check.notes)
    return _collect(report, check.generate(corpus), check.evaluate)


def run_all(corpus: CorpusSpec = DEFAULT_CORPUS, ids: Iterable[str] | None = None) -> list[CheckReport]:
    return [run_check(cid, corpus) for cid in (ids or check_ids())]


# ---------------------------------------------------------------------------
# Named examples
# ---------------------------------------------------------------------------


def _ideal(n: int, gen: int):
    return next(i for i in all_ideals(zn(n)) if (gen in i.elements and len(i) == n // gen))


def _example_e1(p: Parts) -> None:
    i, s = _ideal(12, 4), multset_close(zn(12), [3])
    v = sn(i, s)
    p.claim("<4> is {1,3,9}-n with witnesses 3, 9", True, v.holds and v.witnesses == (3, 9))
    n = is_n_ideal(i)
    p.claim("<4> is not an n-ideal, least counterexample (2, 2)", True,
            (not n.holds) and tuple(n.counterexample) == (2, 2))


def _example_e3(p: Parts) -> None:
    r = zn(12)
    i, s, nil = _ideal(12, 2), multset_close(r, [3]), nilradical(r)
    p.claim("<2> is prime", True, is_prime(i).holds)
    p.claim("<2> is S-prime", True, s_witnesses("S-prime", i, s).holds)
    p.claim("<2> is S-n", True, sn(i, s).holds)
    p.claim("nilradical is <6>", True, nil.elements == (0, 6))
    p.claim("(I:s) = I != nilradical for every s in S", True,
            all(colon(i, x) == i and i != nil for x in s.elements))


def _example_z6(p: Parts) -> None:
    r = zn(6)
    s = multset_close(r, [3])
    found = [i.elements for i in all_ideals(r) if is_disjoint(s, i) and sn(i, s).holds]
    p.claim("S-n-ideals of Z_6 for S = {1,3} are <0>, <2>", True, found == [(0,), (0, 2, 4)])
    p.claim("Z_6 has no n-ideals", True, not any(n_ideal_holds(i) for i in all_ideals(r) if i.is_proper))


EXAMPLES: dict[str, Callable[[Parts], None]] = {"e1": _example_e1, "e3": _example_e3, "Z6": _example_z6}


def _evaluate_example(inst: dict) -> Outcome:
    p = Parts()
    EXAMPLES[inst["example"]](p)
    return p.outcome()


def replicate_examples() -> CheckReport:
    report = CheckReport("EXAMPLES", "Worked examples: <4> and <2> in Z_12 with S = {1,3,9}; Z_6 with S = {1,3}.")
    return _collect(report, ({"example": name} for name in EXAMPLES), _evaluate_example)


# ---------------------------------------------------------------------------
# Converse searches: a found witness shows a converse fails on a finite ring
# ---------------------------------------------------------------------------


def _subset_instances(c: CorpusSpec):
    r = zn(12)
    seed = {"ideal": _ideal(12, 4), "small": multset_close(r, []), "big": multset_close(r, [3])}
    yield dict(seed, seeded=True)
    for spec in base_specs(c):
        r = ring_from_spec(spec)
        if r.order > c.family_ring_max:
            continue
        ms = multsets(r, c)
        for small in ms:
            for big in ms:
                if small != big and small <= big:
                    for i in ideals(r, c):
                        inst = {"ideal": i, "small": small, "big": big}
                        if is_disjoint(big, i) and inst != seed:
                            yield inst


def _subset_eval(inst: dict) -> Outcome:
    i, small, big = inst["ideal"], inst["small"], inst["big"]
    if sn(i, big).holds and not sn(i, small).holds:
        return Outcome(WITNESS, "I is T-n for T = big but not S-n for the smaller S = small")
    return Outcome(CONFIRMED, "no witness")


def _ama_instances(c: CorpusSpec):
    for a in _amalgamations(c):
        if _j_nil(a):
            continue
        src, tgt = a.hom.source, a.hom.target
        for s in multsets(src, c):
            for i in ideals(src, c):
                if is_disjoint(s, i):
                    yield {"ring": a, "ideal": i, "multset": s}
        if a.hom.is_surjective:
            for t in multsets(tgt, c):
                for k in ideals(tgt, c):
                    if is_disjoint(t, k):
                        yield {"ring": a, "target_ideal": k, "target_multset": t}


def _ama_eval(inst: dict) -> Outcome:
    a: AmalgamationRing = inst["ring"]
    if "ideal" in inst:
        i, s = inst["ideal"], inst["multset"]
        lifted, sj = a.amalg_ideal(i), a.amalg_multset(s)
        if sn(i, s).holds and is_disjoint(sj, lifted) and not sn(lifted, sj).holds:
            return Outcome(WITNESS, "I S-n but I amalgamated along J is not (S amalgamated)-n")
        return Outcome(CONFIRMED, "no witness")
    k, t = inst["target_ideal"], inst["target_multset"]
    kbar, tbar = a.amalg_kbar(k), a.amalg_tbar(t)
    if sn(k, t).holds and is_disjoint(tbar, kbar) and not sn(kbar, tbar).holds:
        return Outcome(WITNESS, "K T-n but its pullback is not n relative to the pullback of T")
    return Outcome(CONFIRMED, "no witness")


def _idealiz_instances(c: CorpusSpec):
    for a in _idealizations(c):
        base = a.base
        for s in multsets(base, c):
            for i in ideals(base, c):
                if not is_disjoint(s, i) or not sn(i, s).holds:
                    continue
                im = a.module.ideal_times_module(i)
                for n in _submodules(a):
                    if not (im & ~n).any():
                        yield {"ring": a, "ideal": i, "submodule": Submodule(n), "multset": s}


def _idealiz_eval(inst: dict) -> Outcome:
    from .instances import submodule_mask

    a, i, s = inst["ring"], inst["ideal"], inst["multset"]
    lifted = a.ideal_plus(i, submodule_mask(inst["submodule"], a.m_order))
    sm = a.multset_plus_module(s)
    if is_disjoint(sm, lifted) and not sn(lifted, sm).holds:
        return Outcome(WITNESS, "I S-n but I(+)N is not S(+)M-n")
    return Outcome(CONFIRMED, "no witness")


SEARCHES = {
    "SUBSET-CONVERSE": ("Is there S inside T and I with I T-n but not S-n?", _subset_instances, _subset_eval),
    "AMA-NONEQUIV": ("With J not nil: is I S-n while I amalgamated along J is not, or K T-n while its "
                     "pullback is not?", _ama_instances, _ama_eval),
    "IDEALIZ-CONVERSE": ("Is there I S-n and N with IM inside N such that I(+)N is not S(+)M-n?",
                         _idealiz_instances, _idealiz_eval),
}


def converse_counterexample_search(claim: str, corpus: CorpusSpec = DEFAULT_CORPUS) -> CheckReport:
    if claim not in SEARCHES:
        raise KeyError(f"unknown search {claim!r}; known: {', '.join(SEARCHES)}")
    question, generate, evaluate = SEARCHES[claim]
    return _collect(CheckReport(claim, question), generate(corpus), evaluate)


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------


def replay(check_id: str, instance_doc: dict) -> Outcome:
    """Re-evaluate one serialized instance in isolation."""
    inst = decode(instance_doc)
    if check_id == "EXAMPLES":
        return _evaluate_example(inst)
    if check_id in SEARCHES:
        return SEARCHES[check_id][2](inst)
    return get_check(check_id).evaluate(inst)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render_text(reports: list[CheckReport], *, timing: bool = False) -> str:
    lines = []
    total_inst = total_viol = 0
    for r in reports:
        total_inst += r.instances
        total_viol += len(r.violations)
        status = "PASS" if r.ok else "FAIL"
        head = (f"{r.id:<16} {status}  instances={r.instances} confirmed={r.confirmed} "
                f"vacuous={r.vacuous} skipped={len(r.skipped)} violations={len(r.violations)}")
        if r.id in SEARCHES:
            head += f" witnesses={r.witness_count}"
        if timing and r.elapsed is not None:
            head += f" time={r.elapsed:.2f}s"
        lines.append(head)
        for tag, count in sorted(r.tags.items()):
            lines.append(f"    tag {tag}: {count}")
        for note in r.notes:
            lines.append(f"    note: {note}")
        reasons = Counter(s["reason"] for s in r.skipped)
        for reason, count in sorted(reasons.items()):
            lines.append(f"    skipped ({count}): {reason}")
        for v in r.violations:
            lines.append(f"    VIOLATION {v['detail']}")
            lines.append(f"      {canonical(v['instance'])}")
        for w in r.witnesses:
            lines.append(f"    witness: {w['detail']}")
            lines.append(f"      {canonical(w['instance'])}")
    lines.append(f"total: checks={len(reports)} instances={total_inst} violations={total_viol}")
    return "\n".join(lines) + "\n"


def render_json(reports: list[CheckReport], *, timing: bool = False, corpus: CorpusSpec | None = None) -> str:
    doc = {
        "schema_version": 1,
        "reports": [r.to_json(timing=timing) for r in reports],
        "total_instances": sum(r.instances for r in reports),
        "total_violations": sum(len(r.violations) for r in reports),
    }
    if corpus is not None:
        doc["corpus"] = corpus.to_json()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


__all__ = [
    "CheckReport",
    "EXAMPLES",
    "SEARCHES",
    "converse_counterexample_search",
    "render_json",
    "render_text",
    "replay",
    "replicate_examples",
    "run_all",
    "run_check",
]
