"""Checks that move S-n-ideals across constructions: localizations, homomorphisms,
quotients, products, idealizations and amalgamations.  The last entry audits
the constructed rings themselves."""

from __future__ import annotations

import numpy as np
from sympy import divisors

from ..classify import n_ideal_holds
from ..constructions import (
    AmalgamationRing,
    DerivedRing,
    IdealizationRing,
    LocalizedRing,
    QuotientRing,
    RingHom,
    hom_image_ideal,
    hom_image_multset,
    hom_preimage_ideal,
    localize_ideal,
    localize_multset,
    make_hom,
    product_ideal,
    product_multset,
)
from ..ideals import (
    Ideal,
    MultSet,
    all_ideals,
    colon,
    is_disjoint,
    is_ideal_mask,
    is_multset_mask,
    ring_cache,
)
from ..rings import FiniteRing, ProductRing, nilradical, verify_axioms
from .checks_core import sn, sn_holds
from .corpus import (
    DEFAULT_CORPUS,
    CorpusSpec,
    amalgamation_specs,
    base_specs,
    corpus_rings,
    idealization_specs,
    ideals,
    localization_specs,
    multsets,
    product,
    product_pairs,
    proper,
    quotient_specs,
    ring_from_spec,
    zn,
)
from .instances import Submodule, submodule_mask
from .registry import Outcome, Parts, register

# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _localized(r: FiniteRing, t: MultSet) -> LocalizedRing:
    cache = ring_cache(r, "localized")
    if t.key not in cache:
        loc = LocalizedRing(r, t)
        loc.tabulate()
        cache[t.key] = loc
    return cache[t.key]


def _contract(loc: LocalizedRing, j: Ideal) -> Ideal:
    return hom_preimage_ideal(loc.canonical_hom, j)


def _quotient(r: FiniteRing, i: Ideal) -> QuotientRing:
    cache = ring_cache(r, "quotients")
    if i.key not in cache:
        q = QuotientRing(r, i)
        q.tabulate()
        cache[i.key] = q
    return cache[i.key]


def _small_bases(c: CorpusSpec, cap: int) -> list[FiniteRing]:
    return [r for r in map(ring_from_spec, base_specs(c)) if r.order <= cap]


def _nil_ideal(r: FiniteRing, mask: np.ndarray) -> bool:
    return not (mask & ~r.nil_mask).any()


# ---------------------------------------------------------------------------
# Localization
# ---------------------------------------------------------------------------


@register(
    "T-LOC",
    "For S inside T and I disjoint from T: if I is S-n then the extension of I to the fractions over T is "
    "S-n for the image of S there, and its contraction is (I:u) for some S-element u; when S = T the "
    "extension is an n-ideal.",
)
class LocalizationTransfer:
    @staticmethod
    def generate(c):
        for r in _small_bases(c, c.localization_base_max):
            ms = [m for m in multsets(r, c) if not m.contains_zero]
            for big in ms:
                for small in ms:
                    if not small <= big:
                        continue
                    for i in ideals(r, c):
                        if is_disjoint(big, i):
                            yield {"ideal": i, "small": small, "big": big}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, small, big = inst["ideal"], inst["small"], inst["big"]
        v = sn(i, small)
        p = Parts()
        if not v.holds:
            return p.outcome()
        loc = _localized(i.ring, big)
        ext = localize_ideal(loc, i)
        image = localize_multset(loc, small)
        if not p.claim("extension misses the image of S", True, is_disjoint(image, ext)):
            return p.outcome()
        p.claim("extension is S-n for the image of S", True, sn(ext, image).holds)
        contraction = _contract(loc, ext)
        p.claim("contraction is (I:u) for an S-element u", True,
                any(contraction == colon(i, u) for u in v.witnesses))
        p.claim("extension is an n-ideal", small == big, lambda: n_ideal_holds(ext))
        return p.outcome()


@register(
    "T-LOC-IFF",
    "For I disjoint from S (0 not in S): I is S-n iff the extension of I is an n-ideal of the fractions "
    "over S, its contraction is (I:s) for some s, and the contraction of the extended nilradical is (nil:t) "
    "for some t in S.",
)
class LocalizationCriterion:
    @staticmethod
    def generate(c):
        for r in _small_bases(c, c.localization_base_max):
            for s in multsets(r, c):
                if s.contains_zero:
                    continue
                for i in ideals(r, c):
                    if is_disjoint(s, i):
                        yield {"ideal": i, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        i, s = inst["ideal"], inst["multset"]
        r = i.ring
        loc = _localized(r, s)
        nil = nilradical(r)
        ext = localize_ideal(loc, i)
        criterion = (
            n_ideal_holds(ext)
            and any(_contract(loc, ext) == colon(i, x) for x in s.elements)
            and any(_contract(loc, localize_ideal(loc, nil)) == colon(nil, t) for t in s.elements)
        )
        p = Parts()
        p.claim("S-n iff the three localization conditions", True, sn(i, s).holds == criterion)
        return p.outcome()


# ---------------------------------------------------------------------------
# Homomorphisms and quotients
# ---------------------------------------------------------------------------


def _prime_subring_hom(r: ProductRing) -> RingHom | None:
    """``Z_c -> R`` sending 1 to 1, when that map is not onto."""
    one = r.one
    multiples = [r.zero]
    x = one
    while x != r.zero:
        multiples.append(x)
        x = r.add(x, one)
    c = len(multiples)
    if c == r.order:
        return None
    return make_hom(zn(c), r, multiples)


def _homs(c: CorpusSpec, *, injective_only: bool = False):
    """Reductions, projections, quotient maps, fraction maps, amalgamation maps, prime subrings."""
    out: list[RingHom] = []
    if not injective_only:
        for n in range(2, c.zn_max + 1):
            for m in divisors(n):
                if 1 < m < n:
                    out.append(make_hom(zn(n), zn(m), [x % m for x in range(n)]))
        for a, b in product_pairs(c):
            if a * b > c.cross_max:
                continue
            p = product(a, b)
            first, second = p.decode(p.arange)
            out.append(make_hom(p, zn(a), first))
            out.append(make_hom(p, zn(b), second))
        for spec in quotient_specs(c):
            q = ring_from_spec(spec)
            if q.base.order <= c.localization_base_max:
                out.append(q.projection)
        for spec in localization_specs(c):
            out.append(ring_from_spec(spec).canonical_hom)
    for spec in amalgamation_specs(c):
        a = ring_from_spec(spec)
        if not injective_only:
            out.append(a.projection)
        if a.ambient.order <= c.amalgamation_max:
            out.append(a.inclusion)
    for a, b in product_pairs(c):
        if a * b <= c.cross_max:
            h = _prime_subring_hom(product(a, b))
            if h is not None:
                out.append(h)
    return out


@register(
    "T-HOM",
    "For a ring map f: if f is onto and I is S-n containing Ker f, then f(I) misses f(S) and is f(S)-n; if "
    "Ker f lies in the nilradical and J is f(S)-n, then the preimage of J is S-n.",
)
class HomomorphismTransfer:
    @staticmethod
    def generate(c):
        for f in _homs(c):
            kernel = f.kernel
            nil_kernel = _nil_ideal(f.source, kernel.mask)
            for s in multsets(f.source, c):
                if f.is_surjective:
                    for i in ideals(f.source, c):
                        if kernel <= i and is_disjoint(s, i):
                            yield {"hom": f, "multset": s, "ideal": i}
                if nil_kernel:
                    fs = hom_image_multset(f, s)
                    for j in ideals(f.target, c):
                        if is_disjoint(fs, j):
                            yield {"hom": f, "multset": s, "target_ideal": j}

    @staticmethod
    def evaluate(inst) -> Outcome:
        f, s = inst["hom"], inst["multset"]
        fs = hom_image_multset(f, s)
        p = Parts()
        if "ideal" in inst:
            i = inst["ideal"]
            if sn(i, s).holds:
                fi = hom_image_ideal(f, i)
                if p.claim("f(I) misses f(S)", True, is_disjoint(fs, fi)):
                    p.claim("f(I) is f(S)-n", True, sn(fi, fs).holds)
        else:
            j = inst["target_ideal"]
            p.claim("preimage is S-n", sn(j, fs).holds, lambda: sn_holds(hom_preimage_ideal(f, j), s))
        return p.outcome()


@register(
    "T-QUOT",
    "For ideals I inside J: if J is S-n then J/I is S-n for the image of S in R/I, with the converse when I "
    "lies in the nilradical; for a subring R of R', the trace on R of an S-n-ideal of R' is S-n.",
)
class QuotientTransfer:
    @staticmethod
    def generate(c):
        for r in _small_bases(c, c.localization_base_max):
            props = proper(r, c)
            for base_ideal in props:
                if base_ideal.is_zero:
                    continue
                for j in props:
                    if not base_ideal <= j:
                        continue
                    for s in multsets(r, c):
                        if is_disjoint(s, j):
                            yield {"base_ideal": base_ideal, "ideal": j, "multset": s}
        for f in _homs(c, injective_only=True):
            for s in multsets(f.source, c):
                fs = hom_image_multset(f, s)
                for k in ideals(f.target, c):
                    if is_disjoint(fs, k):
                        yield {"hom": f, "multset": s, "target_ideal": k}

    @staticmethod
    def evaluate(inst) -> Outcome:
        p = Parts()
        s = inst["multset"]
        if "hom" in inst:
            f, k = inst["hom"], inst["target_ideal"]
            fs = hom_image_multset(f, s)
            p.claim("trace on the subring is S-n", sn(k, fs).holds,
                    lambda: sn_holds(hom_preimage_ideal(f, k), s))
            return p.outcome()
        i, j = inst["base_ideal"], inst["ideal"]
        q = _quotient(i.ring, i)
        image_s = hom_image_multset(q.projection, s)
        image_j = hom_image_ideal(q.projection, j)
        if not p.claim("J/I misses the image of S", True, is_disjoint(image_s, image_j)):
            return p.outcome()
        up, down = sn(j, s).holds, sn(image_j, image_s).holds
        p.claim("J S-n implies J/I S-n", up, down)
        p.claim("J/I S-n implies J S-n when I is nil", down and _nil_ideal(i.ring, i.mask), up)
        return p.outcome()


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def _product_cases(c: CorpusSpec):
    for a, b in product_pairs(c):
        if a * b > c.cross_max:
            continue
        yield product(a, b), zn(a), zn(b)


@register(
    "T-CART",
    "I x R' is (S x S')-n iff I is S-n and S' meets the nilradical of R'; symmetrically for R x I'. The "
    "nilradical condition cannot be dropped: <4> x Z_12 in Z_12 x Z_12 with S = S' = {1,3,9}.",
)
class ProductWithWholeFactor:
    @staticmethod
    def generate(c):
        yield {"replicate": "Z12xZ12"}
        for p, left, right in _product_cases(c):
            for s in multsets(left, c):
                for s2 in multsets(right, c):
                    for i in ideals(left, c):
                        if is_disjoint(s, i):
                            yield {"product": p, "multset": s, "multset2": s2, "ideal": i}
                    for i2 in ideals(right, c):
                        if is_disjoint(s2, i2):
                            yield {"product": p, "multset": s, "multset2": s2, "ideal2": i2}

    @staticmethod
    def evaluate(inst) -> Outcome:
        part = Parts()
        if "replicate" in inst:
            p, r = product(12, 12), zn(12)
            s = next(m for m in multsets(r, CorpusSpec()) if m.elements == (1, 3, 9))
            four = next(i for i in all_ideals(r) if i.elements == (0, 4, 8))
            lifted, ss = product_ideal(p, four, None), product_multset(p, s, s)
            part.claim("<4> is S-n in Z_12", True, sn(four, s).holds)
            part.claim("<4> x Z_12 is not (S x S)-n", True, not sn(lifted, ss).holds)
            two_one = int(p.encode([2, 1]))
            square = p.mul(two_one, two_one)
            part.claim("(2,1)(2,1) lies in <4> x Z_12", True, bool(lifted.mask[square]))
            part.claim("no (s,s') sends (2,1) into the ideal or the nilradical", True,
                       not any(lifted.mask[p.mul(u, two_one)] or p.nil_mask[p.mul(u, two_one)] for u in ss.elements))
            return part.outcome()
        p, s, s2 = inst["product"], inst["multset"], inst["multset2"]
        ss = product_multset(p, s, s2)
        if "ideal" in inst:
            i = inst["ideal"]
            lhs = sn(product_ideal(p, i, None), ss).holds
            rhs = sn(i, s).holds and bool((s2.mask & s2.ring.nil_mask).any())
        else:
            i2 = inst["ideal2"]
            lhs = sn(product_ideal(p, None, i2), ss).holds
            rhs = sn(i2, s2).holds and bool((s.mask & s.ring.nil_mask).any())
        part.claim("whole-factor product S-n iff factor condition", True, lhs == rhs)
        return part.outcome()


def _cross_instances(c: CorpusSpec):
    for p, left, right in _product_cases(c):
        for s in multsets(left, c):
            for s2 in multsets(right, c):
                for i in proper(left, c):
                    for i2 in proper(right, c):
                        yield {"product": p, "multset": s, "multset2": s2, "ideal": i, "ideal2": i2}


@register(
    "T-CROSS-NEG",
    "If I, I' are proper, I misses S and I' misses S', then I x I' is not (S x S')-n.",
)
class CrossProductNegative:
    @staticmethod
    def generate(c):
        for inst in _cross_instances(c):
            if is_disjoint(inst["multset"], inst["ideal"]) and is_disjoint(inst["multset2"], inst["ideal2"]):
                yield inst

    @staticmethod
    def evaluate(inst) -> Outcome:
        p = inst["product"]
        ii = product_ideal(p, inst["ideal"], inst["ideal2"])
        ss = product_multset(p, inst["multset"], inst["multset2"])
        part = Parts()
        part.claim("I x I' is not (S x S')-n", True, not sn(ii, ss).holds)
        return part.outcome()


@register(
    "T-CROSS-POS",
    "For proper I, I': if I is S-n and S' meets the nilradical of R', or I' is S'-n and S meets the "
    "nilradical of R, then I x I' is (S x S')-n.",
)
class CrossProductPositive:
    @staticmethod
    def generate(c):
        for inst in _cross_instances(c):
            s, s2 = inst["multset"], inst["multset2"]
            if (s2.mask & s2.ring.nil_mask).any() or (s.mask & s.ring.nil_mask).any():
                yield inst

    @staticmethod
    def evaluate(inst) -> Outcome:
        p, s, s2, i, i2 = inst["product"], inst["multset"], inst["multset2"], inst["ideal"], inst["ideal2"]
        ii = product_ideal(p, i, i2)
        ss = product_multset(p, s, s2)
        part = Parts()
        first = sn_holds(i, s) and bool((s2.mask & s2.ring.nil_mask).any())
        second = sn_holds(i2, s2) and bool((s.mask & s.ring.nil_mask).any())
        part.claim("first condition gives (S x S')-n", first, lambda: sn_holds(ii, ss))
        part.claim("second condition gives (S x S')-n", second, lambda: sn_holds(ii, ss))
        return part.outcome()


# ---------------------------------------------------------------------------
# Idealization
# ---------------------------------------------------------------------------


def _idealizations(c: CorpusSpec) -> list[IdealizationRing]:
    return [ring_from_spec(spec) for spec in idealization_specs(c)]


def _submodules(a: IdealizationRing) -> list[np.ndarray]:
    cache = ring_cache(a, "submodules")
    if "all" not in cache:
        cache["all"] = a.module.all_submodules()
    return cache["all"]


@register(
    "T-IDL",
    "For I disjoint from S and a submodule N with IM inside N: if I(+)N is S(+)M-n then I is S-n.",
)
class IdealizationDescent:
    @staticmethod
    def generate(c):
        for a in _idealizations(c):
            base = a.base
            subs = _submodules(a)
            for s in multsets(base, c):
                for i in ideals(base, c):
                    if not is_disjoint(s, i):
                        continue
                    im = a.module.ideal_times_module(i)
                    for n in subs:
                        if not (im & ~n).any():
                            yield {"ring": a, "ideal": i, "submodule": Submodule(n), "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        a, i, s = inst["ring"], inst["ideal"], inst["multset"]
        n = submodule_mask(inst["submodule"], a.m_order)
        lifted = a.ideal_plus(i, n)
        sm = a.multset_plus_module(s)
        p = Parts()
        if not p.claim("I(+)N misses S(+)M", True, is_disjoint(sm, lifted)):
            return p.outcome()
        p.claim("I(+)N S(+)M-n implies I S-n", sn(lifted, sm).holds, lambda: sn(i, s).holds)
        return p.outcome()


@register(
    "T-ID",
    "For I disjoint from S: I is S-n iff I(+)M is S(+)0-n iff I(+)M is S(+)M-n; the nilradical of R(+)M is "
    "nil(R)(+)M.",
)
class IdealizationEquivalence:
    @staticmethod
    def generate(c):
        for a in _idealizations(c):
            yield {"ring": a}
            for s in multsets(a.base, c):
                for i in ideals(a.base, c):
                    if is_disjoint(s, i):
                        yield {"ring": a, "ideal": i, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        a = inst["ring"]
        p = Parts()
        if "ideal" not in inst:
            p.claim("nilradical formula", True, bool((a.nil_mask == a.nilradical_formula()).all()))
            return p.outcome()
        i, s = inst["ideal"], inst["multset"]
        lifted = a.ideal_plus(i)
        one = sn(i, s).holds
        two = sn(lifted, a.multset_plus_zero(s)).holds
        three = sn(lifted, a.multset_plus_module(s)).holds
        p.claim("I S-n iff I(+)M S(+)0-n", True, one == two)
        p.claim("I(+)M S(+)0-n iff S(+)M-n", True, two == three)
        return p.outcome()


# ---------------------------------------------------------------------------
# Amalgamation
# ---------------------------------------------------------------------------


def _amalgamations(c: CorpusSpec) -> list[AmalgamationRing]:
    return [ring_from_spec(spec) for spec in amalgamation_specs(c)]


def _j_nil(a: AmalgamationRing) -> bool:
    return _nil_ideal(a.hom.target, a.j.mask)


def _kernel_nil(a: AmalgamationRing) -> bool:
    return _nil_ideal(a.hom.source, a.hom.kernel.mask)


def _is_duplication(a: AmalgamationRing) -> bool:
    return a.hom.source == a.hom.target and bool((a.hom.map == a.hom.source.arange).all())


def _amalg_tags(a: AmalgamationRing) -> str | None:
    return "duplication" if _is_duplication(a) else None


@register(
    "T-AMA",
    "For I disjoint from S in R: I amalgamated along J being W-n implies it is (S amalgamated along J)-n, "
    "which implies I is S-n; all three agree when J is nil. When J is nil the nilradical of the "
    "amalgamation is the amalgamation of the nilradical.",
)
class AmalgamationChain:
    @staticmethod
    def generate(c):
        for a in _amalgamations(c):
            if _j_nil(a):
                yield {"ring": a}
            for s in multsets(a.hom.source, c):
                for i in ideals(a.hom.source, c):
                    if is_disjoint(s, i):
                        yield {"ring": a, "ideal": i, "multset": s}

    @staticmethod
    def evaluate(inst) -> Outcome:
        a = inst["ring"]
        p = Parts()
        tag = _amalg_tags(a)
        if "ideal" not in inst:
            p.claim("nilradical formula", _j_nil(a), bool((a.nil_mask == a.nilradical_formula()).all()), tag=tag)
            return p.outcome()
        i, s = inst["ideal"], inst["multset"]
        lifted = a.amalg_ideal(i)
        one = sn(lifted, a.amalg_w(s)).holds
        two = sn(lifted, a.amalg_multset(s)).holds
        three = sn(i, s).holds
        p.claim("W-n implies (S amalgamated)-n", one, two, tag=tag)
        p.claim("(S amalgamated)-n implies S-n", two, three, tag=tag)
        p.claim("S-n implies W-n when J is nil", three and _j_nil(a), one, tag=tag)
        return p.outcome()


@register(
    "T-AMA2",
    "For f onto, K an ideal of R' disjoint from T: if the pullback of K to the amalgamation is n-relative to "
    "the pullback of T, then K is T-n; the converse holds when J and Ker f are nil.",
    notes=("only surjective f: the statement and its proof need f onto",),
)
class AmalgamationPullback:
    @staticmethod
    def generate(c):
        for a in _amalgamations(c):
            if not a.hom.is_surjective:
                continue
            for t in multsets(a.hom.target, c):
                for k in ideals(a.hom.target, c):
                    if is_disjoint(t, k):
                        yield {"ring": a, "target_ideal": k, "target_multset": t}

    @staticmethod
    def evaluate(inst) -> Outcome:
        a, k, t = inst["ring"], inst["target_ideal"], inst["target_multset"]
        kbar, tbar = a.amalg_kbar(k), a.amalg_tbar(t)
        p = Parts()
        tag = _amalg_tags(a)
        if not p.claim("pullbacks stay disjoint", True, is_disjoint(tbar, kbar)):
            return p.outcome()
        up, down = sn(kbar, tbar).holds, sn(k, t).holds
        p.claim("pullback n-relative implies K T-n", up, down, tag=tag)
        p.claim("K T-n implies pullback when J, Ker f nil", down and _j_nil(a) and _kernel_nil(a), up, tag=tag)
        return p.outcome()


@register(
    "T-AMA-CORS",
    "Consequences for amalgamations: when J is nil, every (S amalgamated)-n-ideal containing 0 x J is I "
    "amalgamated along J for an S-n-ideal I; for f onto and T = f(S), (S x T)-n implies pullback-n implies "
    "K T-n, all equivalent when J and Ker f are nil; with S = {1} the same statements hold for n-ideals.",
    notes=("the (S x T) statements are evaluated for surjective f only",),
)
class AmalgamationCorollaries:
    @staticmethod
    def generate(c):
        for a in _amalgamations(c):
            src, tgt = a.hom.source, a.hom.target
            if _j_nil(a):
                for s in multsets(src, c):
                    yield {"ring": a, "multset": s, "shape": True}
            for i in proper(src, c):
                yield {"ring": a, "ideal": i}
            if a.hom.is_surjective:
                for k in proper(tgt, c):
                    yield {"ring": a, "target_ideal": k}
                for s in multsets(src, c):
                    t = hom_image_multset(a.hom, s)
                    for k in ideals(tgt, c):
                        if is_disjoint(t, k):
                            yield {"ring": a, "multset": s, "target_ideal": k}

    @staticmethod
    def evaluate(inst) -> Outcome:
        a = inst["ring"]
        p = Parts()
        tag = _amalg_tags(a)
        j_nil, ker_nil = _j_nil(a), _kernel_nil(a)
        if inst.get("shape"):
            s = inst["multset"]
            sj = a.amalg_multset(s)
            zj = a.zero_times_j()
            for kk in all_ideals(a):
                if not zj <= kk or not is_disjoint(sj, kk) or not sn(kk, sj).holds:
                    continue
                base = hom_image_ideal(a.projection, kk)
                p.claim(f"{list(kk.elements)} is I amalgamated along J", True, kk == a.amalg_ideal(base), tag=tag)
                p.claim(f"projection of {list(kk.elements)} is S-n", True, sn_holds(base, s), tag=tag)
            return p.outcome()
        if "ideal" in inst:
            i = inst["ideal"]
            lifted = a.amalg_ideal(i)
            up, down = n_ideal_holds(lifted), n_ideal_holds(i)
            p.claim("I amalgamated n implies I n", up, down, tag=tag)
            p.claim("I n implies I amalgamated n when J nil", down and j_nil, up, tag=tag)
            return p.outcome()
        k = inst["target_ideal"]
        kbar = a.amalg_kbar(k)
        if "multset" not in inst:
            up, down = n_ideal_holds(kbar), n_ideal_holds(k)
            p.claim("pullback n implies K n", up, down, tag=tag)
            p.claim("K n implies pullback n when J, Ker f nil", down and j_nil and ker_nil, up, tag=tag)
            return p.outcome()
        s = inst["multset"]
        t = hom_image_multset(a.hom, s)
        st, tbar = a.amalg_s_times_fs(s), a.amalg_tbar(t)
        if not p.claim("pullback misses S x T and the pullback of T", True,
                       is_disjoint(st, kbar) and is_disjoint(tbar, kbar)):
            return p.outcome()
        one, two, three = sn(kbar, st).holds, sn(kbar, tbar).holds, sn(k, t).holds
        p.claim("(S x T)-n implies pullback T-n", one, two, tag=tag)
        p.claim("pullback T-n implies K T-n", two, three, tag=tag)
        p.claim("K T-n implies (S x T)-n when J, Ker f nil", three and j_nil and ker_nil, one, tag=tag)
        return p.outcome()


# ---------------------------------------------------------------------------
# Construction audit
# ---------------------------------------------------------------------------


def _lifted_sets(r: FiniteRing, c: CorpusSpec):
    """(name, kind, mask) for every set the constructions lift into ``r``."""
    if isinstance(r, QuotientRing):
        for j in all_ideals(r.base):
            if r.ideal <= j:
                yield f"image of {list(j.elements)}", "ideal", hom_image_ideal(r.projection, j).mask
        for s in multsets(r.base, c):
            yield f"image of S={list(s.elements)}", "multset", hom_image_multset(r.projection, s).mask
    elif isinstance(r, LocalizedRing):
        for j in all_ideals(r.base):
            yield f"extension of {list(j.elements)}", "ideal", localize_ideal(r, j).mask
        for s in multsets(r.base, c):
            yield f"fractions of {list(s.elements)}", "multset", localize_multset(r, s).mask
    elif isinstance(r, IdealizationRing):
        for i in all_ideals(r.base):
            im = r.module.ideal_times_module(i)
            for n in _submodules(r):
                if not (im & ~n).any():
                    yield f"{list(i.elements)}(+)N", "ideal", r.ideal_plus(i, n).mask
        for s in multsets(r.base, c):
            yield f"S(+)0 for {list(s.elements)}", "multset", r.multset_plus_zero(s).mask
            yield f"S(+)M for {list(s.elements)}", "multset", r.multset_plus_module(s).mask
    elif isinstance(r, AmalgamationRing):
        src, tgt = r.hom.source, r.hom.target
        for i in all_ideals(src):
            yield f"amalgamation of {list(i.elements)}", "ideal", r.amalg_ideal(i).mask
        for k in all_ideals(tgt):
            yield f"pullback of {list(k.elements)}", "ideal", r.amalg_kbar(k).mask
        yield "0 x J", "ideal", r.zero_times_j().mask
        for s in multsets(src, c):
            yield f"S amalgamated for {list(s.elements)}", "multset", r.amalg_multset(s).mask
            yield f"W for {list(s.elements)}", "multset", r.amalg_w(s).mask
            yield f"S x f(S) for {list(s.elements)}", "multset", r.amalg_s_times_fs(s).mask
        for t in multsets(tgt, c):
            yield f"pullback of T={list(t.elements)}", "multset", r.amalg_tbar(t).mask
    elif isinstance(r, ProductRing) and len(r.factors) == 2:
        left, right = r.factors
        for i in all_ideals(left):
            for i2 in all_ideals(right):
                yield f"{list(i.elements)} x {list(i2.elements)}", "ideal", product_ideal(r, i, i2).mask
        for s in multsets(left, c):
            for s2 in multsets(right, c):
                yield f"S x S' for {list(s.elements)}, {list(s2.elements)}", "multset", \
                    product_multset(r, s, s2).mask


@register(
    "C-VALID",
    "Every corpus ring satisfies the commutative ring axioms, every lifted ideal or multiplicative set is "
    "closed, and the nilradical formulas for idealizations and (J nil) amalgamations hold.",
)
class ConstructionAudit:
    @staticmethod
    def generate(c):
        for r in corpus_rings(c):
            yield {"ring": r}

    @staticmethod
    def evaluate(inst) -> Outcome:
        r = inst["ring"]
        p = Parts()
        report = getattr(r, "axiom_report", None) or verify_axioms(r)
        p.claim(f"ring axioms ({report.mode})", True, report.ok)
        if isinstance(r, LocalizedRing):
            killed = (r.base.mul_table[r.multset.array] == r.base.zero).any(axis=0)
            p.claim("canonical kernel is the S-torsion", True,
                    bool((r.canonical_hom.kernel.mask == killed).all()))
            p.claim("S maps to units", True, bool(r.units_mask[r.canonical_hom.map[r.multset.array]].all()))
        bad = [name for name, kind, mask in _lifted_sets(r, DEFAULT_CORPUS)
               if not (is_ideal_mask(r, mask) if kind == "ideal" else is_multset_mask(r, mask))]
        p.claim("lifted sets are closed", True, not bad)
        if bad:
            p.note("not closed: " + ", ".join(bad[:5]))
        if isinstance(r, IdealizationRing):
            p.claim("nilradical formula", True, bool((r.nil_mask == r.nilradical_formula()).all()))
        if isinstance(r, AmalgamationRing):
            p.claim("nilradical formula", _j_nil(r), bool((r.nil_mask == r.nilradical_formula()).all()))
        return p.outcome()


__all__: list[str] = []
