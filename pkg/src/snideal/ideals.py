"""Ideals and multiplicatively closed subsets of finite rings.

Both are stored as dense boolean masks over the ring's element indices.
Heavy per-ideal data (radical, colon rows) is cached on the ring, keyed by the
mask, so equal ideals built along different routes share it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from sympy import divisors

from . import config
from .rings import FiniteRing, OrderCapError, RingError, ZnRing, build_ring, spec_from_json


class RingMismatchError(RingError):
    pass


def ring_cache(r: FiniteRing, name: str) -> dict:
    store = r.__dict__.setdefault("_snideal_caches", {})
    return store.setdefault(name, {})


def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


class ElementSet:
    """An immutable subset of a ring's elements."""

    def __init__(self, ring: FiniteRing, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (ring.order,):
            raise ValueError("mask length must equal the ring order")
        if mask.flags.writeable:
            mask = mask.copy()
            mask.setflags(write=False)
        self.ring = ring
        self.mask = mask

    @cached_property
    def key(self) -> bytes:
        return _mask_key(self.mask)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.mask))

    @cached_property
    def array(self) -> np.ndarray:
        return np.flatnonzero(self.mask).astype(np.int64)

    def __contains__(self, x) -> bool:
        return 0 <= int(x) < self.ring.order and bool(self.mask[int(x)])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ElementSet)
            and type(self) is type(other)
            and self.ring == other.ring
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.ring.id, self.key))

    def __le__(self, other: ElementSet) -> bool:
        _same_ring(self, other)
        return not (self.mask & ~other.mask).any()

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.key != other.key

    def issubset(self, other: ElementSet) -> bool:
        return self <= other

    def meets(self, other: ElementSet) -> bool:
        _same_ring(self, other)
        return bool((self.mask & other.mask).any())

    def sort_key(self) -> tuple:
        return (len(self), self.elements)


def _same_ring(a: ElementSet, b: ElementSet) -> None:
    if a.ring != b.ring:
        raise RingMismatchError("operands live in different rings")


class Ideal(ElementSet):
    """An ideal; ``generators`` records provenance when known."""

    def __init__(self, ring: FiniteRing, mask: np.ndarray, generators: tuple[int, ...] | None = None):
        super().__init__(ring, mask)
        self.generators = None if generators is None else tuple(int(g) for g in generators)

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask, generators=None, *, check: bool = False) -> Ideal:
        ideal = cls(ring, mask, generators)
        if check and not is_ideal_mask(ring, ideal.mask):
            raise ValueError(f"{ideal.elements} is not an ideal of {ring.id}")
        return ideal

    @classmethod
    def from_elements(cls, ring: FiniteRing, elements: Iterable[int], *, check: bool = True) -> Ideal:
        mask = np.zeros(ring.order, dtype=bool)
        els = list(elements)
        ring._check(*els)
        mask[els] = True
        return cls.from_mask(ring, mask, check=check)

    @property
    def is_proper(self) -> bool:
        return not self.mask[self.ring.one]

    @property
    def is_zero(self) -> bool:
        return len(self) == 1

    def __repr__(self) -> str:
        if self.generators is not None:
            return f"Ideal<{','.join(map(str, self.generators))}>({len(self)} elts)"
        return f"Ideal({list(self.elements)})"

    def label(self) -> str:
        """``<g>`` for principal ideals of Z_n, otherwise the element list."""
        r = self.ring
        if isinstance(r, ZnRing):
            return "<0>" if self.is_zero else f"<{_zn_generator(self)}>"
        return "{" + ",".join(map(str, self.elements)) + "}"

    def to_json(self) -> dict:
        doc: dict = {"ring": self.ring.spec.to_json(), "elements": list(self.elements)}
        if self.generators is not None:
            doc["gens"] = list(self.generators)
        return doc

    # -- cached derived data --------------------------------------------------
    @property
    def radical_mask(self) -> np.ndarray:
        cache = ring_cache(self.ring, "radical")
        mask = cache.get(self.key)
        if mask is None:
            r = self.ring
            p = r.arange.copy()
            for _ in range(max(1, int(np.ceil(np.log2(r.order))))):
                p = np.asarray(r._mul(p, p), dtype=np.int64)
            mask = self.mask[p]
            mask.setflags(write=False)
            cache[self.key] = mask
        return mask

    @property
    def colon_rows(self) -> np.ndarray:
        """Row ``o`` is the mask of ``(I : reps[o])`` for each unit orbit."""
        cache = ring_cache(self.ring, "colon_rows")
        rows = cache.get(self.key)
        if rows is None:
            _, reps = self.ring.orbits
            rows = self.mask[self.ring.mul_table[reps]]
            rows.setflags(write=False)
            cache[self.key] = rows
        return rows


def _zn_generator(ideal: Ideal) -> int:
    nonzero = [x for x in ideal.elements if x]
    return min(nonzero)


class MultSet(ElementSet):
    """A multiplicatively closed subset containing 1 (0 and nilpotents allowed)."""

    def __init__(self, ring: FiniteRing, mask: np.ndarray, seed: tuple[int, ...] | None = None):
        super().__init__(ring, mask)
        self.seed = None if seed is None else tuple(int(s) for s in seed)

    @classmethod
    def from_elements(cls, ring: FiniteRing, elements: Iterable[int], *, check: bool = True) -> MultSet:
        mask = np.zeros(ring.order, dtype=bool)
        els = list(elements)
        ring._check(*els)
        mask[els] = True
        ms = cls(ring, mask)
        if check and not is_multset_mask(ring, ms.mask):
            raise ValueError(f"{ms.elements} is not multiplicatively closed with 1")
        return ms

    @property
    def contains_zero(self) -> bool:
        return bool(self.mask[self.ring.zero])

    def __repr__(self) -> str:
        return f"MultSet({list(self.elements)})"

    def label(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def to_json(self) -> dict:
        doc: dict = {"ring": self.ring.spec.to_json(), "elements": list(self.elements)}
        if self.seed is not None:
            doc["seed"] = list(self.seed)
        return doc


# ---------------------------------------------------------------------------
# Closure checks
# ---------------------------------------------------------------------------


def is_ideal_mask(r: FiniteRing, mask: np.ndarray) -> bool:
    """Contains 0, closed under addition and under multiplication by R."""
    mask = np.asarray(mask, dtype=bool)
    if not mask[r.zero]:
        return False
    els = np.flatnonzero(mask).astype(np.int64)
    if not mask[np.asarray(r._add(els[:, None], els[None, :]))].all():
        return False
    return bool(mask[np.asarray(r._mul(els[:, None], r.arange[None, :]))].all())


def is_multset_mask(r: FiniteRing, mask: np.ndarray) -> bool:
    mask = np.asarray(mask, dtype=bool)
    if not mask[r.one]:
        return False
    els = np.flatnonzero(mask).astype(np.int64)
    return bool(mask[np.asarray(r._mul(els[:, None], els[None, :]))].all())


# ---------------------------------------------------------------------------
# Generation and enumeration
# ---------------------------------------------------------------------------


def principal_mask(r: FiniteRing, a: int) -> np.ndarray:
    mask = np.zeros(r.order, dtype=bool)
    mask[r.mul_all(a, r.arange)] = True  # Ra is already an additive subgroup
    return mask


def _sum_masks(r: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if not (a & ~b).any():
        return b
    if not (b & ~a).any():
        return a
    ea = np.flatnonzero(a).astype(np.int64)
    eb = np.flatnonzero(b).astype(np.int64)
    out = np.zeros(r.order, dtype=bool)
    step = max(1, 2**22 // max(1, len(eb)))
    for lo in range(0, len(ea), step):
        out[np.asarray(r._add(ea[lo:lo + step, None], eb[None, :])).ravel()] = True
    return out


def additive_closure(r: FiniteRing, elements: Iterable[int]) -> np.ndarray:
    """Subgroup of (R,+) generated by ``elements``."""
    h = np.zeros(r.order, dtype=bool)
    h[r.zero] = True
    for x in elements:
        x = int(x)
        if h[x]:
            continue
        cyc = np.zeros(r.order, dtype=bool)
        y = r.zero
        while True:
            cyc[y] = True
            y = int(r._add(y, x))
            if y == r.zero:
                break
        h = _sum_masks(r, h, cyc)
    return h


def ideal_generate(r: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``: the sum of the principal ideals Rg."""
    gens = tuple(int(g) for g in gens)
    r._check(*gens)
    mask = np.zeros(r.order, dtype=bool)
    mask[r.zero] = True
    for g in gens:
        mask = _sum_masks(r, mask, principal_mask(r, g))
    return Ideal(r, mask, gens)


def unit_ideal(r: FiniteRing) -> Ideal:
    return Ideal(r, np.ones(r.order, dtype=bool), (r.one,))


def zero_ideal(r: FiniteRing) -> Ideal:
    mask = np.zeros(r.order, dtype=bool)
    mask[r.zero] = True
    return Ideal(r, mask, ())


def all_ideals(r: FiniteRing) -> list[Ideal]:
    """Every ideal exactly once, sorted by (size, elements).

    Z_n uses the divisor lattice; other rings use generic closure.
    """
    cache = ring_cache(r, "all_ideals")
    if "list" not in cache:
        if isinstance(r, ZnRing):
            result = _zn_ideals(r)
        else:
            result = all_ideals_generic(r)
        cache["list"] = result
    return list(cache["list"])


def _zn_ideals(r: ZnRing) -> list[Ideal]:
    out = []
    for d in divisors(r.n):
        mask = np.zeros(r.order, dtype=bool)
        mask[::d] = True
        out.append(Ideal(r, mask, (d % r.n,)))
    out.sort(key=Ideal.sort_key)
    return out


def all_ideals_generic(r: FiniteRing) -> list[Ideal]:
    """Principal ideals of unit-orbit representatives, closed under sums."""
    cap = config.enumeration_cap()
    if r.order > cap:
        raise OrderCapError(f"ideal enumeration needs order <= {cap}, ring has order {r.order}")
    _, reps = r.orbits
    principals: dict[bytes, tuple[np.ndarray, int]] = {}
    for a in reps:
        m = principal_mask(r, int(a))
        principals.setdefault(_mask_key(m), (m, int(a)))
    found = dict(principals)
    queue = list(principals.values())
    plist = list(principals.values())
    while queue:
        m, _ = queue.pop()
        for p, g in plist:
            s = _sum_masks(r, m, p)
            k = _mask_key(s)
            if k not in found:
                found[k] = (s, g)
                queue.append((s, g))
    ideals = [Ideal(r, m) for m, _ in found.values()]
    ideals.sort(key=Ideal.sort_key)
    return ideals


def proper_ideals(r: FiniteRing) -> list[Ideal]:
    return [i for i in all_ideals(r) if i.is_proper]


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------


def radical(i: Ideal) -> Ideal:
    return Ideal(i.ring, i.radical_mask)


def _colon_mask(i: Ideal, s: int) -> np.ndarray:
    r = i.ring
    return i.mask[r.mul_all(s, r.arange)]


def colon(i: Ideal, by) -> Ideal:
    """``(I : s) = {x : s x in I}`` or ``(I : J) = {x : xJ in I}``."""
    r = i.ring
    if isinstance(by, Ideal):
        _same_ring(i, by)
        mask = np.ones(r.order, dtype=bool)
        for j in by.elements:
            mask &= _colon_mask(i, j)
        return Ideal(r, mask)
    r._check(by)
    return Ideal(r, _colon_mask(i, int(by)))


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, _sum_masks(a.ring, a.mask, b.mask))


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, a.mask & b.mask)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    """Ideal generated by all products ``xy``; the product set is R-stable."""
    _same_ring(a, b)
    r = a.ring
    prods = np.unique(np.asarray(r._mul(a.array[:, None], b.array[None, :])))
    return Ideal(r, additive_closure(r, prods))


def ideal_arith(op: str, a: Ideal, b: Ideal) -> Ideal:
    ops = {"sum": ideal_sum, "product": ideal_product, "intersect": ideal_intersect}
    if op not in ops:
        raise ValueError(f"unknown ideal operation {op!r}")
    return ops[op](a, b)


def image_ideal(r: FiniteRing, i: Ideal, s: int) -> Ideal:
    """``sI``, an ideal since R is commutative."""
    mask = np.zeros(r.order, dtype=bool)
    mask[r.mul_all(s, i.array)] = True
    return Ideal(r, mask)


@dataclass(frozen=True)
class SuperfluousResult:
    verdict: bool
    witness: Ideal | None = None


def is_superfluous(i: Ideal) -> SuperfluousResult:
    """True iff ``I + J = R`` forces ``J = R``; otherwise a proper witness J."""
    if not i.is_proper:
        raise ValueError("superfluousness is defined for proper ideals")
    for j in proper_ideals(i.ring):
        if not ideal_sum(i, j).is_proper:
            return SuperfluousResult(False, j)
    return SuperfluousResult(True, None)


# ---------------------------------------------------------------------------
# Multiplicative sets
# ---------------------------------------------------------------------------


def multset_close(r: FiniteRing, seed: Iterable[int]) -> MultSet:
    """Smallest multiplicatively closed set containing ``seed`` and 1."""
    seed = tuple(int(x) for x in seed)
    r._check(*seed)
    mask = np.zeros(r.order, dtype=bool)
    mask[r.one] = True
    mask[list(seed)] = True
    while True:
        els = np.flatnonzero(mask).astype(np.int64)
        new = mask.copy()
        new[np.asarray(r._mul(els[:, None], els[None, :])).ravel()] = True
        if (new == mask).all():
            break
        mask = new
    return MultSet(r, mask, seed)


def unit_multset(r: FiniteRing) -> MultSet:
    return MultSet(r, r.units_mask, tuple(int(u) for u in r.units))


def saturation(s: MultSet) -> MultSet:
    """``S* = {x : xy in S for some y}``."""
    r = s.ring
    cache = ring_cache(r, "saturation")
    if s.key not in cache:
        cache[s.key] = MultSet(r, s.mask[r.mul_table].any(axis=1))
    return cache[s.key]


def is_disjoint(s: ElementSet, i: ElementSet) -> bool:
    _same_ring(s, i)
    return not (s.mask & i.mask).any()


def is_subset_of_units(s: MultSet) -> bool:
    return not (s.mask & ~s.ring.units_mask).any()


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def ideal_from_json(doc: dict, ring: FiniteRing | None = None) -> Ideal:
    """``{"ring": spec, "gens": [...]}`` or ``{"ring": spec, "elements": [...]}``."""
    r = ring if ring is not None else build_ring(spec_from_json(doc["ring"]))
    if "elements" in doc:
        return Ideal.from_elements(r, doc["elements"], check=True)
    return ideal_generate(r, doc.get("gens", []))


def multset_from_json(doc: dict, ring: FiniteRing | None = None) -> MultSet:
    """``{"ring": spec, "seed": [...]}`` or ``{"ring": spec, "elements": [...]}``."""
    r = ring if ring is not None else build_ring(spec_from_json(doc["ring"]))
    if "elements" in doc:
        return MultSet.from_elements(r, doc["elements"], check=True)
    return multset_close(r, doc.get("seed", []))
