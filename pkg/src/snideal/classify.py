"""Decision procedures for prime, primary, r-, n-, S-prime, S-primary and S-n-ideals.

Every predicate here has the shape

    for all a, b with ab in I:  guard(s*a)  or  target(s*b)

for a fixed ``s`` (``s = 1`` for the absolute notions).  For fixed ``a`` the
admissible ``b`` form the colon ideal ``(I : a)``, so the condition reads
"``(I : a)`` is inside ``{b : target(s*b)}`` whenever ``guard(s*a)`` fails".
``(I : a)`` and the guard only depend on the unit orbit of ``a``, so the scan
touches one representative per orbit and still covers every pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from sympy import divisors, isprime, primefactors

from .ideals import (
    Ideal,
    MultSet,
    all_ideals,
    colon,
    ideal_product,
    is_disjoint,
    multset_close,
    radical,
    ring_cache,
)
from .rings import FiniteRing, RingError, ZnRing, build_ring, nilradical


class NotDisjointError(RingError):
    """S meets I; S-relative notions are undefined there."""


class ImproperIdealError(RingError):
    pass


S_KINDS = ("S-n", "S-prime", "S-primary")
ABSOLUTE_KINDS = ("prime", "primary", "r", "n")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate.

    ``witnesses`` are the elements ``s`` for which the defining implication
    holds (``(1,)`` for a true absolute predicate).  ``counterexample`` is the
    lexicographically least pair refuting every ``s`` at once, when one exists;
    ``refutations`` maps each non-witness ``s`` to its own least failing pair.
    """

    kind: str
    holds: bool
    witnesses: tuple[int, ...] = ()
    counterexample: tuple[int, int] | None = None
    refutations: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "witnesses": list(self.witnesses),
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "refutations": {str(k): list(v) for k, v in sorted(self.refutations.items())},
        }


def _guard_target(kind: str, i: Ideal) -> tuple[np.ndarray, np.ndarray]:
    r = i.ring
    if kind in ("S-n", "n"):
        return r.nil_mask, i.mask
    if kind in ("S-prime", "prime"):
        return i.mask, i.mask
    if kind in ("S-primary", "primary"):
        return i.mask, i.radical_mask
    if kind == "r":
        return r.zero_divisor_mask, i.mask
    raise ValueError(f"unknown predicate kind {kind!r}")


def _scan(i: Ideal, svals: np.ndarray, guard: np.ndarray, target: np.ndarray) -> Verdict:
    r = i.ring
    table = r.mul_table
    _, reps = r.orbits
    rows = i.colon_rows                                      # (orbits, N)
    guarded = guard[table[np.ix_(svals, reps)]]              # (|S|, orbits)
    miss = ~target[table[svals]]                             # (|S|, N)
    # bad[s, o]: some b in (I : reps[o]) has target(s*b) false
    bad = (miss.astype(np.float32) @ rows.T.astype(np.float32)) > 0
    fail = bad & ~guarded
    failing = fail.any(axis=1)
    witnesses = tuple(int(s) for s in svals[~failing])

    # reps ascend and each rep is its orbit's minimum, so the first failing
    # orbit and the first missing b give the least refuting pair
    first = fail.argmax(axis=1)
    first_b = (rows[first] & miss).argmax(axis=1)
    refutations = {int(svals[k]): (int(reps[first[k]]), int(first_b[k])) for k in np.flatnonzero(failing)}

    counterexample = None
    if not witnesses:
        all_unguarded = ~guarded.any(axis=0)
        all_miss = miss.all(axis=0)
        for o in np.flatnonzero(all_unguarded):
            hit = np.flatnonzero(rows[o] & all_miss)
            if len(hit):
                counterexample = (int(reps[o]), int(hit[0]))
                break
    return Verdict(
        kind="",
        holds=bool(witnesses),
        witnesses=witnesses,
        counterexample=counterexample,
        refutations=refutations,
    )


def _cached(kind: str, i: Ideal, s: MultSet | None) -> Verdict:
    cache = ring_cache(i.ring, "verdicts")
    key = (kind, i.key, None if s is None else s.key)
    v = cache.get(key)
    if v is None:
        guard, target = _guard_target(kind, i)
        svals = np.array([i.ring.one] if s is None else s.array, dtype=np.int64)
        raw = _scan(i, svals, guard, target)
        v = Verdict(kind, raw.holds, raw.witnesses, raw.counterexample, raw.refutations)
        cache[key] = v
    return v


def _absolute(kind: str, i: Ideal) -> Verdict:
    if not i.is_proper:
        raise ImproperIdealError(f"{kind}-ideals must be proper")
    return _cached(kind, i, None)


def is_prime(i: Ideal) -> Verdict:
    return _absolute("prime", i)


def is_primary(i: Ideal) -> Verdict:
    return _absolute("primary", i)


def is_r_ideal(i: Ideal) -> Verdict:
    return _absolute("r", i)


def is_n_ideal(i: Ideal) -> Verdict:
    return _absolute("n", i)


def n_ideal_holds(i: Ideal) -> bool:
    """n-ideal test that answers False for the whole ring instead of raising."""
    return i.is_proper and is_n_ideal(i).holds


def s_witnesses(kind: str, i: Ideal, s: MultSet) -> Verdict:
    """All S-elements of ``I`` for ``kind`` in S-n / S-prime / S-primary."""
    if kind not in S_KINDS:
        raise ValueError(f"kind must be one of {S_KINDS}")
    if i.ring != s.ring:
        raise RingError("ideal and multiplicative set live in different rings")
    if not is_disjoint(s, i):
        raise NotDisjointError(f"S meets I in {sorted(set(s.elements) & set(i.elements))}")
    return _cached(kind, i, s)


def is_s_n_ideal(i: Ideal, s: MultSet) -> bool:
    return s_witnesses("S-n", i, s).holds


def is_s_prime(i: Ideal, s: MultSet) -> bool:
    return s_witnesses("S-prime", i, s).holds


# ---------------------------------------------------------------------------
# Alternative forms (ideal pairs, n-fold products)
# ---------------------------------------------------------------------------


def ideal_product_table(r: FiniteRing) -> tuple[list[Ideal], np.ndarray]:
    """All ideals and the index matrix of their pairwise products."""
    cache = ring_cache(r, "ideal_products")
    if "table" not in cache:
        ideals = all_ideals(r)
        index = {j.key: k for k, j in enumerate(ideals)}
        n = len(ideals)
        prods = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                p = index[ideal_product(ideals[a], ideals[b]).key]
                prods[a, b] = prods[b, a] = p
        cache["table"] = (ideals, prods)
    return cache["table"]


def _scaled_inside(i: Ideal, mask: np.ndarray) -> np.ndarray:
    """``out[s, J]``: whether ``sJ`` lies inside ``mask``, for every element s and ideal J."""
    r = i.ring
    cache = ring_cache(r, "scaled_gathers")
    if "rows" not in cache:
        cache["rows"] = [r.mul_table[:, j.array] for j in all_ideals(r)]
    return np.stack([mask[g].all(axis=1) for g in cache["rows"]], axis=1)


def _ideal_form_tables(i: Ideal) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    cache = ring_cache(i.ring, "ideal_forms")
    if i.key not in cache:
        ideals, prods = ideal_product_table(i.ring)
        inside = np.array([j <= i for j in ideals])
        cache[i.key] = (prods, inside, _scaled_inside(i, i.ring.nil_mask), _scaled_inside(i, i.mask))
    return cache[i.key]


def s_n_ideal_pair_witnesses(i: Ideal, s: MultSet) -> tuple[int, ...]:
    """Elements s with: JK in I implies sJ in nilradical or sK in I, over all ideal pairs."""
    if not is_disjoint(s, i):
        raise NotDisjointError("S meets I")
    prods, inside, nil_ok, in_i = _ideal_form_tables(i)
    pairs = inside[prods].astype(np.float32)  # pairs[J, K]: JK inside I
    sv = s.array
    bad_left = (~nil_ok[sv]).astype(np.float32)
    bad_right = ~in_i[sv]
    fail = ((bad_left @ pairs) > 0) & bad_right
    return tuple(int(x) for x, f in zip(sv, fail) if not f.any())


def s_n_nary_holds(i: Ideal, s: MultSet, arity: int = 3) -> bool:
    """Element form with ``arity`` factors: some s has, for every product in I,
    ``s*a_j`` nilpotent or ``s*a_k`` in I for some j, k.

    The factors with neither property form a union of unit orbits, and
    membership of a product in I is unit invariant, so partial products are
    tracked by orbit representative only.
    """
    if arity < 2:
        raise ValueError("arity must be at least 2")
    if not is_disjoint(s, i):
        raise NotDisjointError("S meets I")
    r = i.ring
    table = r.mul_table
    orbit_of, reps = r.orbits
    rows = i.colon_rows
    for sv in s.elements:
        row = table[sv]
        bad = ~r.nil_mask[row] & ~i.mask[row]
        if not bad.any():
            return True
        bad_idx = np.flatnonzero(bad)
        cur = reps[bad[reps]]
        for _ in range(arity - 2):
            cur = np.unique(reps[orbit_of[table[np.ix_(cur, bad_idx)].ravel()]])
        if not (rows[orbit_of[cur]] & bad).any():
            return True
    return False


def s_n_nary_ideal_holds(i: Ideal, s: MultSet, arity: int = 3) -> bool:
    """Ideal form with ``arity`` factors over all ideal tuples."""
    if arity < 2:
        raise ValueError("arity must be at least 2")
    if not is_disjoint(s, i):
        raise NotDisjointError("S meets I")
    prods, inside, nil_ok, in_i = _ideal_form_tables(i)
    for sv in s.elements:
        idx = np.flatnonzero(~nil_ok[sv] & ~in_i[sv])
        if len(idx) == 0:
            return True
        reach = idx
        for _ in range(arity - 1):
            reach = np.unique(prods[np.ix_(reach, idx)])
        if not inside[reach].any():
            return True
    return False


# ---------------------------------------------------------------------------
# Aggregates
# ---------------------------------------------------------------------------


@dataclass
class Classification:
    ideal: Ideal
    multset: MultSet
    prime: Verdict
    primary: Verdict
    r_ideal: Verdict
    n_ideal: Verdict
    s_prime: Verdict
    s_primary: Verdict
    s_n: Verdict
    radical: Ideal
    nilradical: Ideal
    nil_annihilating: tuple[int, ...]  # s in S with sI inside the nilradical
    colons: dict[int, Ideal]           # (I : s) for each S-n witness s

    def to_json(self) -> dict:
        return {
            "ring": self.ideal.ring.spec.to_json(),
            "ideal": list(self.ideal.elements),
            "multset": list(self.multset.elements),
            "disjoint": True,
            "prime": self.prime.to_json(),
            "primary": self.primary.to_json(),
            "r_ideal": self.r_ideal.to_json(),
            "n_ideal": self.n_ideal.to_json(),
            "s_prime": self.s_prime.to_json(),
            "s_primary": self.s_primary.to_json(),
            "s_n": self.s_n.to_json(),
            "radical": list(self.radical.elements),
            "nilradical": list(self.nilradical.elements),
            "nil_annihilating": list(self.nil_annihilating),
            "colons": {str(s): list(c.elements) for s, c in sorted(self.colons.items())},
        }


def classify_ideal(i: Ideal, s: MultSet) -> Classification:
    if not i.is_proper:
        raise ImproperIdealError("classification needs a proper ideal")
    sn = s_witnesses("S-n", i, s)
    r = i.ring
    nil_ann = tuple(
        int(sv) for sv in s.elements if r.nil_mask[r.mul_all(sv, i.array)].all()
    )
    return Classification(
        ideal=i,
        multset=s,
        prime=is_prime(i),
        primary=is_primary(i),
        r_ideal=is_r_ideal(i),
        n_ideal=is_n_ideal(i),
        s_prime=s_witnesses("S-prime", i, s),
        s_primary=s_witnesses("S-primary", i, s),
        s_n=sn,
        radical=radical(i),
        nilradical=nilradical(r),
        nil_annihilating=nil_ann,
        colons={w: colon(i, w) for w in sn.witnesses},
    )


def all_s_n_ideals(r: FiniteRing, s: MultSet) -> list[Ideal]:
    return [i for i in all_ideals(r) if is_disjoint(s, i) and _cached("S-n", i, s).holds]


def maximal_s_n_ideals(r: FiniteRing, s: MultSet) -> list[Ideal]:
    found = all_s_n_ideals(r, s)
    return [i for i in found if not any(i < j for j in found)]


# ---------------------------------------------------------------------------
# Z_n closed form
# ---------------------------------------------------------------------------

NONE = "NONE"
ALL_DISJOINT = "ALL_DISJOINT"


@dataclass(frozen=True)
class ZnClassification:
    n: int
    cofactors: tuple[int, ...]
    regime: str
    rule: str
    divisors: tuple[int, ...]  # d with <d> an S-n-ideal; d == n stands for <0>

    def ideal_labels(self) -> list[str]:
        return ["<0>" if d == self.n else f"<{d}>" for d in self.divisors]


def zn_fast_classify(n: int, cofactors) -> ZnClassification:
    """Predict the S-n-ideals of Z_n for S generated by the primes ``cofactors``.

    Purely arithmetic: depends on the number k of distinct primes of n and
    m = |P| only.  When every disjoint ideal qualifies, the ideals are the
    ``<d>`` for divisors d of n having a prime factor outside P.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    primes = tuple(sorted(set(int(p) for p in cofactors)))
    if not primes:
        raise ValueError("the cofactor set P must be nonempty")
    for p in primes:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if n % p:
            raise ValueError(f"{p} does not divide {n}")
    k, m = len(primefactors(n)), len(primes)
    if m == k:
        regime, rule = NONE, "k=1" if k == 1 else "P = all primes"
    elif m == k - 1:
        regime, rule = ALL_DISJOINT, "|P| = k-1"
    else:  # k >= 3 and m <= k-2
        regime, rule = NONE, "k>=3, |P| <= k-2"
    ds: tuple[int, ...] = ()
    if regime == ALL_DISJOINT:
        pset = set(primes)
        ds = tuple(sorted((d for d in divisors(n) if set(primefactors(d)) - pset), reverse=True))
    return ZnClassification(n, primes, regime, rule, ds)


def zn_cofactor_multset(r: ZnRing, cofactors) -> MultSet:
    return multset_close(r, [p % r.n for p in cofactors])


def zn_brute_divisors(n: int, cofactors, ring: ZnRing | None = None) -> tuple[int, ...]:
    """Brute-force counterpart of :func:`zn_fast_classify`'s ideal list."""
    r = ring if ring is not None else build_ring({"zn": n})
    s = zn_cofactor_multset(r, cofactors)
    found = all_s_n_ideals(r, s)
    return tuple(sorted((n if i.is_zero else i.generators[0] for i in found), reverse=True))


def prime_subsets(n: int, *, proper: bool = False) -> list[tuple[int, ...]]:
    ps = primefactors(n)
    top = len(ps) - 1 if proper else len(ps)
    return [c for size in range(1, top + 1) for c in combinations(ps, size)]


__all__ = [
    "ALL_DISJOINT",
    "NONE",
    "Classification",
    "ImproperIdealError",
    "NotDisjointError",
    "Verdict",
    "ZnClassification",
    "all_s_n_ideals",
    "classify_ideal",
    "is_n_ideal",
    "is_primary",
    "is_prime",
    "is_r_ideal",
    "is_s_n_ideal",
    "is_s_prime",
    "maximal_s_n_ideals",
    "n_ideal_holds",
    "prime_subsets",
    "s_n_ideal_pair_witnesses",
    "s_n_nary_holds",
    "s_n_nary_ideal_holds",
    "s_witnesses",
    "zn_brute_divisors",
    "zn_fast_classify",
]
