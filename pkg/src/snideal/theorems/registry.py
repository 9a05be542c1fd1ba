"""Check records, per-instance outcomes and the global registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .corpus import CorpusSpec

CONFIRMED = "confirmed"
VACUOUS = "vacuous"
VIOLATION = "violation"
SKIPPED = "skipped"

COLLAPSED = "collapsed-regime"


@dataclass(frozen=True)
class Outcome:
    status: str
    detail: str = ""
    tags: tuple[str, ...] = ()


class Parts:
    """Accumulates the sub-claims evaluated on one instance.

    ``claim(name, hypothesis, conclusion)`` records nothing when the
    hypothesis is false; otherwise the conclusion (a bool or a zero-argument
    callable) must hold.
    """

    def __init__(self) -> None:
        self.applied: list[str] = []
        self.failed: list[str] = []
        self.tags: set[str] = set()
        self.notes: list[str] = []

    def claim(self, name: str, hypothesis: bool, conclusion, *, tag: str | None = None) -> bool | None:
        if not hypothesis:
            return None
        self.applied.append(name)
        if tag:
            self.tags.add(tag)
        ok = bool(conclusion() if callable(conclusion) else conclusion)
        if not ok:
            self.failed.append(name)
        return ok

    def note(self, text: str) -> None:
        self.notes.append(text)

    def outcome(self) -> Outcome:
        tags = tuple(sorted(self.tags))
        if self.failed:
            detail = "failed: " + "; ".join(self.failed)
            if self.notes:
                detail += " | " + "; ".join(self.notes)
            return Outcome(VIOLATION, detail, tags)
        if self.applied:
            return Outcome(CONFIRMED, "; ".join(self.applied), tags)
        return Outcome(VACUOUS, "no hypothesis applied", tags)


def skipped(reason: str, *tags: str) -> Outcome:
    return Outcome(SKIPPED, reason, tuple(sorted(tags)))


@dataclass(frozen=True)
class Check:
    id: str
    claim: str
    generate: Callable[[CorpusSpec], Iterable[dict]]
    evaluate: Callable[[dict], Outcome]
    notes: tuple[str, ...] = field(default_factory=tuple)


REGISTRY: dict[str, Check] = {}

# reporting order; ids registered but not listed here sort after these, by id
ORDER = (
    "T-P1", "T-CHAR", "T-CHAR2", "T-COLON", "T-REG", "T-UN", "T-INTEG", "T-ZN", "T-ZNGEN",
    "T-MAX", "T-PROD", "T-FAM", "T-SUBSET", "T-SAT", "T-LOC", "T-LOC-IFF", "T-HOM", "T-QUOT",
    "T-SUM", "T-CART", "T-CROSS-NEG", "T-CROSS-POS", "T-IDL", "T-ID", "T-AMA", "T-AMA2",
    "T-AMA-CORS", "C-VALID",
)


def register(check_id: str, claim: str, *, notes: tuple[str, ...] = ()):
    """Class decorator: the class supplies ``generate(corpus)`` and ``evaluate(instance)``."""

    def deco(cls):
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = Check(check_id, claim, cls.generate, cls.evaluate, notes)
        return cls

    return deco


def check_ids() -> list[str]:
    rank = {cid: n for n, cid in enumerate(ORDER)}
    return sorted(REGISTRY, key=lambda cid: (rank.get(cid, len(ORDER)), cid))


def get_check(check_id: str) -> Check:
    try:
        return REGISTRY[check_id]
    except KeyError:
        raise KeyError(f"unknown check id {check_id!r}; known: {', '.join(check_ids())}") from None


def iter_instances(check: Check, corpus: CorpusSpec) -> Iterator[dict]:
    yield from check.generate(corpus)
