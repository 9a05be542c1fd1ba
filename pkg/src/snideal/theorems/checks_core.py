"""Checks that live inside a single ring: definitions, colons, Z_n, families."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from sympy import divisors, primefactors

from ..classify import (
    ALL_DISJOINT,
    NONE,
    all_s_n_ideals,
    ideal_product_table,
    is_n_ideal,
    maximal_s_n_ideals,
    n_ideal_holds,
    s_n_ideal_pair_witnesses,
    s_n_nary_holds,
    s_n_nary_ideal_holds,
    s_witnesses,
    zn_brute_divisors,
    zn_cofactor_multset,
    zn_fast_classify,
)
from ..ideals import (
    Ideal,
    MultSet,
    all_ideals,
    colon,
    ideal_intersect,
    ideal_sum,
    is_disjoint,
    is_subset_of_units,
    is_superfluous,
    multset_close,
    saturation,
)
from ..rings import build_ring, nilradical, ring_predicates
from .corpus import (
    CorpusSpec,
    base_specs,
    corpus_rings,
    disjoint_pairs,
    ideals,
    multsets,
    proper,
    ring_from_spec,
    unit_multsets,
    zn,
)
from .registry import COLLAPSED, Outcome, Parts, register


def sn(i: Ideal, s: MultSet):
    return s_witnesses("S-n", i, s)


def sn_holds(i: Ideal, s: MultSet) -> bool:
    """S-n test that answers False (rather than raising) when I meets S."""
    return is_disjoint(s, i) and sn(i, s).holds


def _pairs(c: CorpusSpec, max_order: int | None = None):
    for r in corpus_rings(c, max_order=max_order):
        for i, s in disjoint_pairs(r, c):
            yield {"ideal": i, "multset": s}


def _unit_instances(c: CorpusSpec):
    for r in corpus_rings(c):
        for s in unit_multsets(r, c):
            yield {"ring": r, "multset": s}


@register(
    "T-P1",
    "For I disjoint from S: if I is S-n then sI lies in the nilradical for some s in S, and I lies in the "
    "nilradical when S consists of units; the nilradical is S-n iff S-prime; for S inside the units the zero "
    "ideal is S-n iff it is an n-ideal.",
)
class NilradicalBasics:
    @staticmethod
    def generate(c):
        return _pairs(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        r = i.ring
        p = Parts()
        v = sn(i, s)
        nil = r.nil_mask
        units_only = is_subset_of_units(s)
        p.claim("sI inside nilradical for some s", v.holds,
                lambda: any(nil[r.mul_all(x, i.array)].all() for x in s.elements))
        p.claim("I inside nilradical", v.holds and units_only, lambda: not (i.mask & ~nil).any(), tag=COLLAPSED)
        p.claim("nilradical: S-n iff S-prime", bool((i.mask == nil).all()),
                lambda: v.holds == s_witnesses("S-prime", i, s).holds)
        p.claim("zero ideal: S-n iff n-ideal", i.is_zero and units_only,
                lambda: v.holds == is_n_ideal(i).holds, tag=COLLAPSED)
        return p.outcome()


@register(
    "T-CHAR",
    "I is S-n iff some s in S satisfies: JK inside I implies sJ inside the nilradical or sK inside I, "
    "over all ideals J, K; both forms single out the same elements s.",
)
class IdealPairForm:
    @staticmethod
    def generate(c):
        return _pairs(c, c.ideal_pair_max)

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        elementwise = sn(i, s).witnesses
        idealwise = s_n_ideal_pair_witnesses(i, s)
        p = Parts()
        p.claim("element form iff ideal-pair form", True, bool(elementwise) == bool(idealwise))
        p.claim("same S-elements", True, set(elementwise) == set(idealwise))
        return p.outcome()


@register(
    "T-CHAR2",
    "When the nilradical is S-n, I is S-n iff the three-factor ideal form holds iff the three-factor "
    "element form holds.",
)
class ThreeFactorForms:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c, max_order=c.nary_max):
            nil = nilradical(r)
            for s in multsets(r, c):
                if not is_disjoint(s, nil) or not sn(nil, s).holds:
                    continue
                for i in ideals(r, c):
                    if is_disjoint(s, i):
                        yield {"ideal": i, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        two = sn(i, s).holds
        ideal3 = s_n_nary_ideal_holds(i, s, 3)
        element3 = s_n_nary_holds(i, s, 3)
        p = Parts()
        p.claim("S-n iff ideal form", True, two == ideal3)
        p.claim("S-n iff element form", True, two == element3)
        return p.outcome()


@register(
    "T-COLON",
    "If (I:s) is an n-ideal for some s in S then I is S-n; if I is S-n with S-element s and (nil:s) is an "
    "n-ideal then (I:s) is an n-ideal; if S consists of units, (I:s) is an n-ideal for every S-element s.",
)
class ColonIdeals:
    @staticmethod
    def generate(c):
        return _pairs(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        r = i.ring
        nil = nilradical(r)
        v = sn(i, s)
        p = Parts()
        n_colons = [x for x in s.elements if n_ideal_holds(colon(i, x))]
        p.claim("some (I:s) n-ideal implies S-n", bool(n_colons), v.holds)
        for w in v.witnesses:
            p.claim(f"(I:{w}) n-ideal given (nil:{w}) n-ideal", n_ideal_holds(colon(nil, w)),
                    lambda w=w: n_ideal_holds(colon(i, w)))
        if is_subset_of_units(s):
            for w in v.witnesses:
                p.claim(f"(I:{w}) n-ideal", True, lambda w=w: n_ideal_holds(colon(i, w)), tag=COLLAPSED)
        return p.outcome()


@register(
    "T-REG",
    "For S inside the units and I S-prime: I is S-n iff (I:s) equals the nilradical for some s in S.",
)
class RegularColon:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c):
            for s in unit_multsets(r, c):
                for i in ideals(r, c):
                    if i.is_proper:
                        yield {"ideal": i, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        nil = nilradical(i.ring)
        p = Parts()
        p.claim("S-n iff some (I:s) is the nilradical", s_witnesses("S-prime", i, s).holds,
                lambda: sn(i, s).holds == any(colon(i, x) == nil for x in s.elements), tag=COLLAPSED)
        return p.outcome()


@register(
    "T-UN",
    "For S inside the units: every proper ideal is n iff every proper ideal is S-n iff the ring is UN. "
    "Outside that regime Z_6 with S = {1,3} has S-n-ideals <0>, <2> and no n-ideals.",
)
class EveryIdeal:
    @staticmethod
    def generate(c):
        yield {"replicate": "Z6"}
        yield from _unit_instances(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        p = Parts()
        if "replicate" in inst:
            r = zn(6)
            s = multset_close(r, [3])
            found = [i.elements for i in all_s_n_ideals(r, s)]
            p.claim("Z_6, S={1,3}: S-n-ideals are <0>, <2>", True, sorted(found) == [(0,), (0, 2, 4)])
            p.claim("Z_6 has no n-ideals", True, not any(n_ideal_holds(i) for i in proper(r)))
            return p.outcome()
        r, s = inst["ring"], inst["multset"]
        props = proper(r)
        every_n = all(n_ideal_holds(i) for i in props)
        every_sn = all(sn(i, s).holds for i in props)
        un = ring_predicates(r).is_un_ring
        p.claim("all n iff all S-n", True, every_n == every_sn, tag=COLLAPSED)
        p.claim("all S-n iff UN-ring", True, every_sn == un, tag=COLLAPSED)
        return p.outcome()


@register(
    "T-INTEG",
    "For S inside the units: a reduced ring is a domain iff some ideal is both S-prime and S-n; the ring is "
    "a field iff it is von Neumann regular and the zero ideal is S-n.",
)
class DomainAndField:
    @staticmethod
    def generate(c):
        return _unit_instances(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        r, s = inst["ring"], inst["multset"]
        preds = ring_predicates(r)
        domain = int(r.zero_divisor_mask.sum()) == 1
        zero = next(i for i in all_ideals(r) if i.is_zero)
        p = Parts()
        p.claim("domain iff some ideal S-prime and S-n", preds.is_reduced,
                lambda: domain == any(s_witnesses("S-prime", i, s).holds and sn(i, s).holds for i in proper(r)),
                tag=COLLAPSED)
        p.claim("field iff VNR and zero ideal S-n", True,
                preds.is_field == (preds.is_von_neumann_regular and sn(zero, s).holds), tag=COLLAPSED)
        return p.outcome()


# rings above zn_max stay out of the corpus cache; instances arrive grouped
# by n, so a tiny LRU lets the prime sets of one n share tables
@lru_cache(maxsize=2)
def _large_zn(n: int):
    return build_ring({"zn": n})


def _zn_outcome(n: int, primes: tuple[int, ...], cached: bool) -> Outcome:
    fast = zn_fast_classify(n, primes)
    r = zn(n) if cached else _large_zn(n)
    brute = zn_brute_divisors(n, primes, ring=r)
    p = Parts()
    p.claim("brute force equals closed form", True, brute == fast.divisors)
    if fast.regime == NONE:
        p.claim("no S-n-ideals", True, brute == ())
    else:
        s = zn_cofactor_multset(r, primes)
        disjoint = tuple(sorted((n if i.is_zero else i.generators[0] for i in all_ideals(r) if is_disjoint(s, i)),
                                reverse=True))
        p.claim("every disjoint ideal is S-n", fast.regime == ALL_DISJOINT, brute == disjoint)
    if not p.outcome().status == "confirmed":
        p.note(f"brute {list(brute)} vs closed form {list(fast.divisors)}")
    return p.outcome()


@register(
    "T-ZN",
    "For every prime p dividing n, the S_p-n-ideals of Z_n found by brute force match the closed form: none "
    "when n has one or at least three prime factors, every ideal disjoint from S_p when it has two.",
)
class ZnSinglePrime:
    @staticmethod
    def generate(c):
        for n in range(2, c.zn_check_max + 1):
            for p in primefactors(n):
                yield {"n": n, "primes": [int(p)], "cached": n <= c.zn_max}

    @staticmethod
    def evaluate(inst) -> Outcome:
        return _zn_outcome(inst["n"], tuple(inst["primes"]), inst.get("cached", False))


@register(
    "T-ZNGEN",
    "For every nonempty set P of primes dividing n (n with at most four prime factors), brute force matches "
    "the closed form: none when P is everything or when |P| <= k-2, every disjoint ideal when |P| = k-1.",
)
class ZnPrimeSets:
    @staticmethod
    def generate(c):
        for n in range(2, c.zn_check_max + 1):
            ps = primefactors(n)
            if len(ps) > 4:
                continue
            for size in range(1, len(ps) + 1):
                for combo in combinations(ps, size):
                    yield {"n": n, "primes": [int(q) for q in combo], "cached": n <= c.zn_max}

    @staticmethod
    def evaluate(inst) -> Outcome:
        return _zn_outcome(inst["n"], tuple(inst["primes"]), inst.get("cached", False))


@register(
    "T-MAX",
    "For S inside the units, every maximal S-n-ideal is S-prime and has (I:s) equal to the nilradical for "
    "some s in S.",
)
class MaximalIdeals:
    @staticmethod
    def generate(c):
        return _unit_instances(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        r, s = inst["ring"], inst["multset"]
        nil = nilradical(r)
        p = Parts()
        for i in maximal_s_n_ideals(r, s):
            p.claim(f"{list(i.elements)} S-prime", True, s_witnesses("S-prime", i, s).holds, tag=COLLAPSED)
            p.claim(f"{list(i.elements)} has a colon equal to the nilradical", True,
                    any(colon(i, x) == nil for x in s.elements), tag=COLLAPSED)
        return p.outcome()


@register(
    "T-PROD",
    "If I is S-n and J meets S, then IJ and the intersection of I and J are S-n.",
)
class ProductWithMeetingIdeal:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c, max_order=c.ideal_pair_max):
            for i, s in disjoint_pairs(r, c):
                if not sn(i, s).holds:
                    continue
                for j in ideals(r, c):
                    if (j.mask & s.mask).any():
                        yield {"ideal": i, "multset": s, "other": j}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s, j = inst["ideal"], inst["multset"], inst["other"]
        found, prods = ideal_product_table(i.ring)
        index = {k.key: n for n, k in enumerate(found)}
        ij = found[prods[index[i.key], index[j.key]]]
        p = Parts()
        if sn(i, s).holds:
            p.claim("IJ is S-n", True, sn_holds(ij, s))
            p.claim("I and J intersect in an S-n-ideal", True, sn_holds(ideal_intersect(i, j), s))
        return p.outcome()


def _meet(family: list[Ideal]) -> Ideal:
    out = family[0]
    for k in family[1:]:
        out = ideal_intersect(out, k)
    return out


@register(
    "T-FAM",
    "For a finite family of proper ideals: if all members are S-n so is their intersection; if the members "
    "outside a nonempty proper subfamily are S-n and that subfamily's intersection meets S, the whole "
    "intersection is S-n.",
    notes=("families of sizes 2 and 3 only; infinite families are out of reach",),
)
class FamilyIntersections:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c, max_order=c.family_ring_max):
            props = proper(r, c)
            for s in multsets(r, c):
                for size in c.family_sizes:
                    for family in combinations(props, size):
                        yield {"family": list(family), "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        family, s = inst["family"], inst["multset"]
        whole = _meet(family)
        flags = [sn_holds(k, s) for k in family]
        p = Parts()
        p.claim("intersection of S-n-ideals is S-n", all(flags), lambda: sn_holds(whole, s))
        idx = range(len(family))
        for size in range(1, len(family)):
            for omega in combinations(idx, size):
                rest = [k for k in idx if k not in omega]
                hyp = all(flags[k] for k in rest) and bool((_meet([family[k] for k in omega]).mask & s.mask).any())
                p.claim(f"subfamily {list(omega)} meets S, rest S-n", hyp, lambda: sn_holds(whole, s))
        return p.outcome()


def _cofactor_property(small: MultSet, big: MultSet) -> bool:
    """Every t in ``big`` has some t' in ``big`` with tt' in ``small``."""
    r = small.ring
    prods = r.mul_table[np.ix_(big.array, big.array)]
    return bool(small.mask[prods].any(axis=1).all())


@register(
    "T-SUBSET",
    "For S inside T where every t in T has t' in T with tt' in S, and I disjoint from T: if I is T-n then I "
    "is S-n (and S-n always gives T-n). The cofactor condition matters: <4> in Z_12 is {1,3,9}-n but not "
    "{1}-n.",
)
class SubsetTransfer:
    @staticmethod
    def generate(c):
        yield {"replicate": "Z12-<4>"}
        for spec in base_specs(c):
            r = ring_from_spec(spec)
            if r.order > c.family_ring_max:
                continue
            ms = multsets(r, c)
            for small in ms:
                for big in ms:
                    if small == big or not small <= big:
                        continue
                    for i in ideals(r, c):
                        if is_disjoint(big, i):
                            yield {"ideal": i, "small": small, "big": big}

    @staticmethod
    def evaluate(inst) -> Outcome:
        p = Parts()
        if "replicate" in inst:
            r = zn(12)
            four = next(i for i in all_ideals(r) if i.elements == (0, 4, 8))
            big, small = multset_close(r, [3]), multset_close(r, [])
            p.claim("<4> is {1,3,9}-n", True, sn(four, big).holds)
            p.claim("<4> is not {1}-n", True, not sn(four, small).holds)
            p.claim("{1} inside {1,3,9} lacks the cofactor property", True, not _cofactor_property(small, big))
            return p.outcome()
        i, small, big = inst["ideal"], inst["small"], inst["big"]
        small_n, big_n = sn(i, small).holds, sn(i, big).holds
        p.claim("S-n implies T-n", small_n, big_n)
        p.claim("T-n implies S-n under the cofactor property", big_n and _cofactor_property(small, big), small_n)
        return p.outcome()


@register(
    "T-SAT",
    "For I disjoint from S, I is also disjoint from the saturation S*, and I is S-n iff it is S*-n.",
)
class Saturation:
    @staticmethod
    def generate(c):
        return _pairs(c)

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        star = saturation(s)
        p = Parts()
        if not p.claim("saturation misses I", True, is_disjoint(star, i)):
            return p.outcome()
        p.claim("S-n iff S*-n", True, sn(i, s).holds == sn(i, star).holds)
        return p.outcome()


@register(
    "T-SUM",
    "For S inside the units: every S-n-ideal is superfluous, and the sum of two S-n-ideals is S-n.",
)
class SumsAndSuperfluous:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c):
            for s in unit_multsets(r, c):
                found = all_s_n_ideals(r, s)
                for i in found:
                    yield {"ideal": i, "multset": s}
                for a, b in combinations(found, 2):
                    yield {"ideal": a, "other": b, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        p = Parts()
        if "other" in inst:
            j = inst["other"]
            p.claim("I + J is S-n", sn(i, s).holds and sn(j, s).holds,
                    lambda: sn_holds(ideal_sum(i, j), s), tag=COLLAPSED)
        else:
            p.claim("S-n implies superfluous", sn(i, s).holds, lambda: is_superfluous(i).verdict, tag=COLLAPSED)
        return p.outcome()


__all__ = ["sn", "sn_holds"]
