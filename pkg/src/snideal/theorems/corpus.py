"""Deterministic corpora of finite rings, ideals and multiplicative sets."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from typing import Iterator

import numpy as np
from sympy import divisors

from ..constructions import AmalgamationRing, IdealizationRing
from ..ideals import Ideal, MultSet, all_ideals, multset_close, principal_mask, unit_multset
from ..rings import FiniteRing, RingSpec, build_ring, spec_from_json


@dataclass(frozen=True)
class CorpusSpec:
    zn_max: int = 60
    product_max: int = 144
    quotient_base_max: int = 72
    localization_base_max: int = 36
    idealization_max: int = 256
    amalgamation_max: int = 256
    # amalgamations along a reduction Z_n -> Z_m or a projection use n (resp. ab) up to this
    amalgamation_source_max: int = 36
    # rings above this order draw multiplicative sets from unit-orbit
    # representatives only, instead of every element
    full_multset_max: int = 60
    # pair/tuple-of-ideals checks are limited to rings up to this order
    ideal_pair_max: int = 144
    family_sizes: tuple[int, ...] = (2, 3)
    family_ring_max: int = 36
    zn_check_max: int = 60
    # n-fold product forms are compared on rings up to this order
    nary_max: int = 64
    # I x I' checks range over products up to this order
    cross_max: int = 72
    # "all" ideals, or "principal" ideals only
    ideal_policy: str = "all"

    def __post_init__(self):
        if self.ideal_policy not in ("all", "principal"):
            raise ValueError("ideal_policy must be 'all' or 'principal'")

    @classmethod
    def from_json(cls, doc: dict | str) -> CorpusSpec:
        if isinstance(doc, str):
            doc = json.loads(doc)
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown corpus fields: {sorted(unknown)}")
        if "family_sizes" in doc:
            doc = dict(doc, family_sizes=tuple(doc["family_sizes"]))
        return cls(**doc)

    def to_json(self) -> dict:
        out = asdict(self)
        out["family_sizes"] = list(self.family_sizes)
        return out


DEFAULT_CORPUS = CorpusSpec()

# ---------------------------------------------------------------------------
# Ring cache: every corpus ring is built once per process so that the
# per-ring caches (tables, orbits, verdicts) are shared between checks.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ring_by_key(key: str) -> FiniteRing:
    return build_ring(spec_from_json(key))


def ring_from_spec(spec: RingSpec | dict) -> FiniteRing:
    if isinstance(spec, RingSpec):
        spec = spec.to_json()
    return _ring_by_key(json.dumps(spec, sort_keys=True, separators=(",", ":")))


def clear_ring_cache() -> None:
    _ring_by_key.cache_clear()


def zn(n: int) -> FiniteRing:
    return ring_from_spec({"zn": n})


def product(a: int, b: int) -> FiniteRing:
    return ring_from_spec({"product": [{"zn": a}, {"zn": b}]})


# ---------------------------------------------------------------------------
# Ring families
# ---------------------------------------------------------------------------


def zn_specs(c: CorpusSpec) -> list[dict]:
    return [{"zn": n} for n in range(2, c.zn_max + 1)]


def product_pairs(c: CorpusSpec) -> list[tuple[int, int]]:
    return [(a, b) for a in range(2, c.product_max + 1) for b in range(a, c.product_max // a + 1)]


def product_specs(c: CorpusSpec) -> list[dict]:
    return [{"product": [{"zn": a}, {"zn": b}]} for a, b in product_pairs(c)]


def base_specs(c: CorpusSpec) -> list[dict]:
    return zn_specs(c) + product_specs(c)


def quotient_specs(c: CorpusSpec) -> list[dict]:
    out = []
    for spec in base_specs(c):
        r = ring_from_spec(spec)
        if r.order > c.quotient_base_max:
            continue
        for i in all_ideals(r):
            if i.is_proper and not i.is_zero:
                out.append({"quotient": {"of": spec, "gens": list(generators_of(i))}})
    return out


def localization_specs(c: CorpusSpec) -> list[dict]:
    out = []
    seen = set()
    for spec in base_specs(c):
        r = ring_from_spec(spec)
        if r.order > c.localization_base_max:
            continue
        for s in multsets(r, c):
            # S inside U(R) only reproduces R; 0 in S gives the zero ring
            if s.contains_zero or not (s.mask & ~r.units_mask).any():
                continue
            key = (json.dumps(spec, sort_keys=True), s.key)
            if key in seen:
                continue
            seen.add(key)
            out.append({"localization": {"of": spec, "seed": list(s.elements)}})
    return out


def _idealization_bases(c: CorpusSpec) -> list[dict]:
    return [s for s in base_specs(c) if ring_from_spec(s).order ** 2 <= c.idealization_max]


def idealization_specs(c: CorpusSpec) -> list[dict]:
    out = []
    for spec in _idealization_bases(c):
        out.append({"idealization": {"of": spec, "module": {"self": True}}})
    for n in range(2, c.zn_max + 1):
        for d in divisors(n):
            if 1 < d < n and n * d <= c.idealization_max:
                out.append({"idealization": {"of": {"zn": n}, "module": {"mod": d}}})
    # a module given by an explicit table: Z_4 acting on Z_2 x Z_2 through Z_2
    if 16 <= c.idealization_max:
        action = [[(r % 2) * m for m in range(4)] for r in range(4)]
        out.append({"idealization": {"of": {"zn": 4}, "module": {"group": [2, 2], "action": action}}})
    return out


def amalgamation_specs(c: CorpusSpec) -> list[dict]:
    """Duplications of Z_n, reductions Z_n -> Z_m, and projections Z_a x Z_b -> Z_a."""
    out = []
    cap = c.amalgamation_max
    for n in range(2, c.zn_max + 1):
        for d in sorted(divisors(n), reverse=True):  # J = <d>, |J| = n/d
            if n * (n // d) <= cap and (d < n or n <= 12):
                out.append({"amalgamation": {"source": {"zn": n}, "target": {"zn": n},
                                             "hom": list(range(n)), "gens": [d % n]}})
        for m in divisors(n) if n <= c.amalgamation_source_max else ():
            if 1 < m < n:
                for d in sorted(divisors(m), reverse=True):
                    if n * (m // d) <= cap:
                        out.append({"amalgamation": {"source": {"zn": n}, "target": {"zn": m},
                                                     "hom": [x % m for x in range(n)], "gens": [d % m]}})
    for a, b in product_pairs(c):
        src = {"product": [{"zn": a}, {"zn": b}]}
        if a * b > c.amalgamation_source_max:
            continue
        hom = [x % a for x in range(a * b)]  # little-endian: first component is x mod a
        for d in sorted(divisors(a), reverse=True):
            if a * b * (a // d) <= cap:
                out.append({"amalgamation": {"source": src, "target": {"zn": a}, "hom": hom, "gens": [d % a]}})
    return out


def derived_specs(c: CorpusSpec) -> list[dict]:
    return quotient_specs(c) + localization_specs(c) + idealization_specs(c) + amalgamation_specs(c)


def all_specs(c: CorpusSpec) -> list[dict]:
    return base_specs(c) + derived_specs(c)


def corpus_rings(c: CorpusSpec, *, max_order: int | None = None) -> Iterator[FiniteRing]:
    for spec in all_specs(c):
        r = ring_from_spec(spec)
        if max_order is None or r.order <= max_order:
            yield r


# ---------------------------------------------------------------------------
# Ideal and multiplicative-set policies
# ---------------------------------------------------------------------------


def generators_of(i: Ideal) -> tuple[int, ...]:
    if i.generators is not None:
        return i.generators
    return i.elements


def multsets(r: FiniteRing, c: CorpusSpec) -> list[MultSet]:
    """Closures of single elements, U(R), and U(R) with 0 adjoined.

    Above ``full_multset_max`` only unit-orbit representatives are used as
    seeds.  Deduplicated and sorted canonically.
    """
    cache = r.__dict__.setdefault("_corpus_multsets", {})
    key = c.full_multset_max
    if key not in cache:
        seeds = r.arange if r.order <= c.full_multset_max else r.orbits[1]
        found: dict[bytes, MultSet] = {}
        for x in seeds:
            m = multset_close(r, [int(x)])
            found.setdefault(m.key, m)
        u = unit_multset(r)
        found.setdefault(u.key, u)
        uz = MultSet(r, u.mask | (r.arange == r.zero))
        found.setdefault(uz.key, uz)
        cache[key] = sorted(found.values(), key=lambda m: m.sort_key())
    return list(cache[key])


def unit_multsets(r: FiniteRing, c: CorpusSpec) -> list[MultSet]:
    return [s for s in multsets(r, c) if not (s.mask & ~r.units_mask).any()]


def ideals(r: FiniteRing, c: CorpusSpec) -> list[Ideal]:
    found = all_ideals(r)
    if c.ideal_policy == "principal":
        principal = {principal_mask(r, int(x)).tobytes() for x in r.orbits[1]}
        found = [i for i in found if i.mask.tobytes() in principal]
    return found


def proper(r: FiniteRing, c: CorpusSpec = DEFAULT_CORPUS) -> list[Ideal]:
    return [i for i in ideals(r, c) if i.is_proper]


def disjoint_pairs(r: FiniteRing, c: CorpusSpec) -> Iterator[tuple[Ideal, MultSet]]:
    """Every (I, S) with I an ideal disjoint from S."""
    for s in multsets(r, c):
        for i in ideals(r, c):
            if not (i.mask & s.mask).any():
                yield i, s


def elements_of(mask: np.ndarray) -> list[int]:
    return [int(x) for x in np.flatnonzero(mask)]


__all__ = [
    "DEFAULT_CORPUS",
    "AmalgamationRing",
    "CorpusSpec",
    "IdealizationRing",
    "all_specs",
    "amalgamation_specs",
    "base_specs",
    "corpus_rings",
    "derived_specs",
    "disjoint_pairs",
    "idealization_specs",
    "ideals",
    "localization_specs",
    "multsets",
    "product_specs",
    "quotient_specs",
    "ring_from_spec",
    "unit_multsets",
    "zn_specs",
]
