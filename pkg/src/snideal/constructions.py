"""Derived rings and the transport of ideals and multiplicative sets.

Element order of every derived ring is the sorted order of its canonical
underlying representation:

* quotient ``R/I``: cosets, by least member;
* localization ``S^-1 R``: fraction classes, by least ``(numerator, denominator)``;
* idealization ``R(+)M``: pairs ``(r, m)`` lexicographically, index ``r*|M| + m``;
* amalgamation ``R |><|^f J``: pairs ``(r, y)`` lexicographically.

Arithmetic is delegated to the underlying ring(s) through lookup arrays, so no
``N x N`` table is ever materialised at construction time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from . import config
from .ideals import (
    Ideal,
    MultSet,
    _mask_key,
    ideal_generate,
    is_disjoint,
    multset_close,
)
from .rings import (
    Amalgamation,
    FiniteRing,
    Idealization,
    InvalidSpecError,
    Localization,
    OrderCapError,
    PreconditionError,
    Product,
    ProductRing,
    Quotient,
    RingError,
    RingSpec,
    ZnRing,
    build_ring,
)


class DegenerateLocalizationError(PreconditionError):
    """0 lies in S, so S^-1 R is the zero ring (not a FiniteRing here)."""


class HomomorphismError(PreconditionError):
    pass


class ModuleError(PreconditionError):
    pass


def _check_derived_order(order: int, what: str) -> None:
    cap = config.derived_cap()
    if order > cap:
        raise OrderCapError(f"{what} would have order {order}, cap is {cap}")


TABULATE_MAX_ORDER = 1024


class DerivedRing(FiniteRing):
    """Base for lookup-backed rings; subclasses supply ``element_repr``.

    Rings up to ``TABULATE_MAX_ORDER`` elements replace the structural
    ``_add``/``_mul`` by full Cayley tables computed from them once.
    """

    backing = "table"

    def tabulate(self) -> None:
        if self.order > TABULATE_MAX_ORDER or "_add" in self.__dict__:
            return
        ar = self.arange
        add = np.asarray(self._add(ar[:, None], ar[None, :]), dtype=np.int64)
        mul = np.asarray(self._mul(ar[:, None], ar[None, :]), dtype=np.int64)
        neg = np.asarray(self._neg(ar), dtype=np.int64)
        self.cayley = (add, mul)
        self._add = lambda a, b: add[a, b]
        self._mul = lambda a, b: mul[a, b]
        self._neg = lambda a: neg[a]

    def element_repr(self, x: int) -> str:
        return str(x)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


class RingHom:
    """A unital ring homomorphism given as an element map, validated exhaustively."""

    def __init__(self, source: FiniteRing, target: FiniteRing, mapping, *, validate: bool = True):
        arr = np.asarray(mapping, dtype=np.int64)
        if arr.shape != (source.order,):
            raise HomomorphismError(f"map needs {source.order} entries, got {arr.shape[0] if arr.ndim else 0}")
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= target.order:
            raise HomomorphismError("map values out of range for the target")
        self.source = source
        self.target = target
        self.map = arr
        self.map.setflags(write=False)
        if validate:
            problem = self._violation()
            if problem:
                raise HomomorphismError(problem)

    def _violation(self) -> str | None:
        f, src, tgt = self.map, self.source, self.target
        if f[src.zero] != tgt.zero:
            return "f(0) != 0"
        if f[src.one] != tgt.one:
            return "f(1) != 1"
        xs = src.arange
        step = max(1, 2**21 // src.order)
        for lo in range(0, src.order, step):
            a = xs[lo:lo + step, None]
            b = xs[None, :]
            for name, op_s, op_t in (("additive", src._add, tgt._add), ("multiplicative", src._mul, tgt._mul)):
                lhs = f[np.asarray(op_s(a, b))]
                rhs = np.asarray(op_t(f[a], f[b]))
                bad = np.argwhere(lhs != rhs)
                if len(bad):
                    x, y = int(a[bad[0][0], 0]), int(bad[0][1])
                    return f"not {name}: f({x} op {y}) != f({x}) op f({y})"
        return None

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @cached_property
    def kernel(self) -> Ideal:
        return Ideal(self.source, self.map == self.target.zero)

    @cached_property
    def is_surjective(self) -> bool:
        hit = np.zeros(self.target.order, dtype=bool)
        hit[self.map] = True
        return bool(hit.all())

    @cached_property
    def image_mask(self) -> np.ndarray:
        hit = np.zeros(self.target.order, dtype=bool)
        hit[self.map] = True
        return hit

    def __repr__(self) -> str:
        return f"RingHom({self.source.id} -> {self.target.id})"


def make_hom(source: FiniteRing, target: FiniteRing, mapping) -> RingHom:
    return RingHom(source, target, mapping)


def identity_hom(r: FiniteRing) -> RingHom:
    return RingHom(r, r, r.arange, validate=False)


def hom_image_ideal(f: RingHom, i: Ideal) -> Ideal:
    """``f(I)``; only an ideal in general when ``f`` is onto."""
    if not f.is_surjective:
        raise HomomorphismError("image of an ideal needs a surjective homomorphism")
    mask = np.zeros(f.target.order, dtype=bool)
    mask[f.map[i.array]] = True
    return Ideal(f.target, mask)


def hom_preimage_ideal(f: RingHom, j: Ideal) -> Ideal:
    return Ideal(f.source, j.mask[f.map])


def hom_image_multset(f: RingHom, s: MultSet) -> MultSet:
    mask = np.zeros(f.target.order, dtype=bool)
    mask[f.map[s.array]] = True
    return MultSet(f.target, mask)


def hom_preimage_multset(f: RingHom, t: MultSet) -> MultSet:
    return MultSet(f.source, t.mask[f.map])


def compose(g: RingHom, f: RingHom) -> RingHom:
    """``g after f``."""
    if f.target != g.source:
        raise HomomorphismError("cannot compose: target/source mismatch")
    return RingHom(f.source, g.target, g.map[f.map], validate=False)


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


class QuotientRing(DerivedRing):
    def __init__(self, base: FiniteRing, ideal: Ideal, spec: RingSpec | None = None):
        if ideal.ring != base:
            raise RingError("ideal belongs to another ring")
        if not ideal.is_proper:
            raise PreconditionError("cannot take the quotient by the whole ring")
        order = base.order // len(ideal)
        _check_derived_order(order, "quotient")
        coset_of = np.full(base.order, -1, dtype=np.int64)
        reps = []
        members = ideal.array
        for x in range(base.order):
            if coset_of[x] < 0:
                coset_of[np.asarray(base._add(np.int64(x), members))] = len(reps)
                reps.append(x)
        self.base = base
        self.ideal = ideal
        self.coset_of = coset_of
        self.reps = np.array(reps, dtype=np.int64)
        gens = ideal.generators if ideal.generators is not None else ideal.elements
        super().__init__(order, spec or Quotient(base.spec, tuple(gens)), int(coset_of[base.one]))

    def _add(self, a, b):
        return self.coset_of[self.base._add(self.reps[a], self.reps[b])]

    def _mul(self, a, b):
        return self.coset_of[self.base._mul(self.reps[a], self.reps[b])]

    def _neg(self, a):
        return self.coset_of[self.base._neg(self.reps[a])]

    @cached_property
    def projection(self) -> RingHom:
        return RingHom(self.base, self, self.coset_of, validate=False)

    def element_repr(self, x: int) -> str:
        return f"{int(self.reps[x])}+I"


@dataclass
class QuotientResult:
    ring: QuotientRing
    projection: RingHom

    def pushforward(self, s: MultSet) -> MultSet:
        return hom_image_multset(self.projection, s)

    def ideal_image(self, j: Ideal) -> Ideal:
        return hom_image_ideal(self.projection, j)


def quotient_ring(r: FiniteRing, i: Ideal) -> QuotientResult:
    q = QuotientRing(r, i)
    return QuotientResult(q, q.projection)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def product_ring(*factors: FiniteRing) -> ProductRing:
    return ProductRing(list(factors), Product(tuple(f.spec for f in factors)))


def _grid(p: ProductRing, first: np.ndarray, second: np.ndarray) -> np.ndarray:
    a, b = np.meshgrid(first, second, indexing="ij")
    mask = np.zeros(p.order, dtype=bool)
    mask[np.asarray(p.encode([a.ravel(), b.ravel()]))] = True
    return mask


def product_ideal(p: ProductRing, first: Ideal | None, second: Ideal | None) -> Ideal:
    """``I x I'``; pass ``None`` for the whole factor ring."""
    f1, f2 = p.factors
    a = f1.arange if first is None else first.array
    b = f2.arange if second is None else second.array
    return Ideal(p, _grid(p, a, b))


def product_ideal_mode(p: ProductRing, i: Ideal, i2: Ideal, mode: str) -> Ideal:
    modes = {"I x R'": (i, None), "R x I'": (None, i2), "I x I'": (i, i2)}
    if mode not in modes:
        raise ValueError(f"mode must be one of {sorted(modes)}")
    return product_ideal(p, *modes[mode])


def product_multset(p: ProductRing, s1: MultSet, s2: MultSet) -> MultSet:
    return MultSet(p, _grid(p, s1.array, s2.array))


# ---------------------------------------------------------------------------
# Localization
# ---------------------------------------------------------------------------


class LocalizedRing(DerivedRing):
    """Classes of fractions r/s, with r/s ~ r'/s' iff u(rs' - r's) = 0 for some u in S."""

    def __init__(self, base: FiniteRing, s: MultSet, spec: RingSpec | None = None):
        if s.ring != base:
            raise RingError("multiplicative set belongs to another ring")
        if s.contains_zero:
            raise DegenerateLocalizationError("0 is in S; the localization is the zero ring")
        dens = s.array
        n, k = base.order, len(dens)
        den_pos = np.full(n, -1, dtype=np.int64)
        den_pos[dens] = np.arange(k)
        # killed[x] iff u*x == 0 for some u in S
        killed = (np.asarray(base._mul(dens[:, None], base.arange[None, :])) == base.zero).any(axis=0)
        nums = np.repeat(base.arange, k)
        dd = np.tile(dens, n)
        class_of = np.full(n * k, -1, dtype=np.int64)
        reps: list[tuple[int, int]] = []
        # pairs are scanned in (numerator, denominator) order, so each class's first pair is its least
        for idx in range(n * k):
            if class_of[idx] >= 0:
                continue
            r0, s0 = int(nums[idx]), int(dd[idx])
            cross = base._add(base._mul(nums, np.int64(s0)), base._neg(base._mul(np.int64(r0), dd)))
            same = killed[np.asarray(cross)] & (class_of < 0)
            class_of[same] = len(reps)
            reps.append((r0, s0))
        order = len(reps)
        if order < 2:
            raise DegenerateLocalizationError("the localization collapsed to the zero ring")
        _check_derived_order(order, "localization")
        self.base = base
        self.multset = s
        self.den_pos = den_pos
        self.class_table = class_of.reshape(n, k)
        self.reps = np.array(reps, dtype=np.int64).reshape(-1, 2)
        self.killed = killed
        one = int(self.class_table[base.one, den_pos[base.one]])
        super().__init__(order, spec or Localization(base.spec, s.seed if s.seed is not None else s.elements), one)

    def _cls(self, num, den):
        return self.class_table[num, self.den_pos[den]]

    def _add(self, a, b):
        n1, d1 = self.reps[a, 0], self.reps[a, 1]
        n2, d2 = self.reps[b, 0], self.reps[b, 1]
        base = self.base
        return self._cls(base._add(base._mul(n1, d2), base._mul(n2, d1)), base._mul(d1, d2))

    def _mul(self, a, b):
        base = self.base
        return self._cls(base._mul(self.reps[a, 0], self.reps[b, 0]), base._mul(self.reps[a, 1], self.reps[b, 1]))

    def _neg(self, a):
        return self._cls(self.base._neg(self.reps[a, 0]), self.reps[a, 1])

    def fraction(self, num: int, den: int) -> int:
        if self.den_pos[den] < 0:
            raise ValueError(f"{den} is not in S")
        return int(self._cls(num, den))

    @cached_property
    def canonical_hom(self) -> RingHom:
        return RingHom(self.base, self, self.class_table[:, self.den_pos[self.base.one]], validate=False)

    def element_repr(self, x: int) -> str:
        n, d = self.reps[x]
        return f"{int(n)}/{int(d)}"


@dataclass
class LocalizationResult:
    ring: LocalizedRing
    canonical_hom: RingHom


def localization(r: FiniteRing, s: MultSet) -> LocalizationResult:
    loc = LocalizedRing(r, s)
    return LocalizationResult(loc, loc.canonical_hom)


def localize_ideal(loc: LocalizedRing, i: Ideal) -> Ideal:
    """``S^-1 I = {a/s : a in I, s in S}``."""
    mask = np.zeros(loc.order, dtype=bool)
    mask[loc.class_table[i.array].ravel()] = True
    return Ideal(loc, mask)


def localize_multset(loc: LocalizedRing, t: MultSet) -> MultSet:
    """``{t/s : t in T, s in S}`` inside ``S^-1 R``."""
    mask = np.zeros(loc.order, dtype=bool)
    mask[loc.class_table[t.array].ravel()] = True
    return MultSet(loc, mask)


@dataclass
class ExtendContract:
    localization: LocalizedRing
    extended: Ideal
    contracted: Ideal


def extend_contract(i: Ideal, s: MultSet, t: MultSet) -> ExtendContract:
    """Extend ``I`` to ``T^-1 R`` and pull it back along ``r -> r/1``.

    ``s`` is only checked for containment in ``t``; the localization is at ``T``.
    """
    if not s <= t:
        raise PreconditionError("S must be contained in T")
    if not is_disjoint(t, i):
        raise PreconditionError("I meets T")
    loc = LocalizedRing(i.ring, t)
    ext = localize_ideal(loc, i)
    return ExtendContract(loc, ext, hom_preimage_ideal(loc.canonical_hom, ext))


# ---------------------------------------------------------------------------
# Modules and idealization
# ---------------------------------------------------------------------------


def _flatten_orders(r: FiniteRing) -> tuple[int, ...]:
    if isinstance(r, ZnRing):
        return (r.n,)
    if isinstance(r, ProductRing):
        out: tuple[int, ...] = ()
        for f in r.factors:
            out += _flatten_orders(f)
        return out
    raise ModuleError(f"{r.id} is not a product of cyclic rings; give the module explicitly")


class ModuleSpec:
    """A finite R-module: additive group ``Z_m1 x ... x Z_mt`` (mixed radix,
    little-endian) and an action table ``action[r, m] = r.m``."""

    def __init__(self, ring: FiniteRing, orders: Iterable[int], action, *, doc=None, validate: bool = True):
        self.ring = ring
        self.orders = tuple(int(m) for m in orders)
        if not self.orders or any(m < 1 for m in self.orders):
            raise ModuleError("group orders must be positive")
        self.order = int(np.prod(self.orders))
        self.action = np.asarray(action, dtype=np.int64)
        if self.action.shape != (ring.order, self.order):
            raise ModuleError(f"action table must have shape {(ring.order, self.order)}")
        if self.action.min() < 0 or self.action.max() >= self.order:
            raise ModuleError("action values out of range")
        self.action.setflags(write=False)
        self.doc = doc if doc is not None else {"group": list(self.orders), "action": self.action.tolist()}
        radices = np.cumprod((1,) + self.orders[:-1])
        self._radices = np.array(radices, dtype=np.int64)
        if validate:
            problem = self._violation()
            if problem:
                raise ModuleError(problem)

    # group arithmetic on module indices
    def decode(self, m):
        m = np.asarray(m, dtype=np.int64)
        return [(m // rad) % o for rad, o in zip(self._radices, self.orders)]

    def encode(self, parts) -> np.ndarray:
        out = 0
        for p, rad, o in zip(parts, self._radices, self.orders):
            out = out + (np.asarray(p, dtype=np.int64) % o) * rad
        return np.asarray(out, dtype=np.int64)

    def add(self, a, b):
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a):
        return self.encode([-x for x in self.decode(a)])

    @cached_property
    def arange(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def _violation(self) -> str | None:
        r, act = self.ring, self.action
        ms = self.arange
        if (act[r.one] != ms).any():
            return "1.m != m"
        if (act[r.zero] != 0).any():
            return "0.m != 0"
        rs = r.arange
        # (r + r').m = r.m + r'.m and (r r').m = r.(r'.m)
        for x in rs:
            s_idx = np.asarray(r._add(np.int64(x), rs))
            if (act[s_idx] != self.add(act[x][None, :], act)).any():
                return f"({x} + r).m != {x}.m + r.m"
            p_idx = np.asarray(r._mul(np.int64(x), rs))
            if (act[p_idx] != act[x][act]).any():
                return f"({x} r).m != {x}.(r.m)"
        # r.(m + m') = r.m + r.m'
        for m in ms:
            sums = self.add(np.int64(m), ms)
            if (act[:, sums] != self.add(act[:, [m]], act)).any():
                return f"r.({m} + m') != r.{m} + r.m'"
        return None

    def to_json(self):
        return self.doc

    @classmethod
    def regular(cls, r: FiniteRing) -> ModuleSpec:
        """R as a module over itself (R a product of cyclic rings)."""
        orders = _flatten_orders(r)
        act = np.asarray(r._mul(r.arange[:, None], r.arange[None, :]), dtype=np.int64)
        return cls(r, orders, act, doc={"self": True}, validate=False)

    @classmethod
    def cyclic_quotient(cls, r: ZnRing, d: int) -> ModuleSpec:
        """``Z_d`` as a ``Z_n``-module for ``d | n``."""
        if not isinstance(r, ZnRing) or d < 1 or r.n % d:
            raise ModuleError("'mod' modules need a Zn ring and a divisor d of n")
        act = (r.arange[:, None] * np.arange(d)[None, :]) % d
        return cls(r, (d,), act, doc={"mod": d}, validate=False)

    @classmethod
    def from_json(cls, r: FiniteRing, doc) -> ModuleSpec:
        if not isinstance(doc, dict):
            raise InvalidSpecError("module must be a JSON object")
        if doc.get("self") is True and len(doc) == 1:
            return cls.regular(r)
        if set(doc) == {"mod"}:
            if not isinstance(r, ZnRing):
                raise InvalidSpecError("'mod' modules need a Zn base ring")
            return cls.cyclic_quotient(r, int(doc["mod"]))
        if set(doc) == {"group", "action"}:
            return cls(r, doc["group"], doc["action"], doc=doc)
        raise InvalidSpecError(f"unrecognised module {json.dumps(doc)}")

    # submodules
    def submodule_mask(self, gens: Iterable[int]) -> np.ndarray:
        """Submodule generated by ``gens``: additive closure of ``R.gens``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for g in gens:
            mask = self._sum(mask, self._cyclic_submodule(int(g)))
        return mask

    def _cyclic_submodule(self, g: int) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.action[:, g]] = True
        return self._additive_closure(mask)

    def _additive_closure(self, mask: np.ndarray) -> np.ndarray:
        while True:
            els = np.flatnonzero(mask)
            new = np.zeros(self.order, dtype=bool)
            new[np.asarray(self.add(els[:, None], els[None, :])).ravel()] = True
            new |= mask
            if (new == mask).all():
                return mask
            mask = new

    def _sum(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ea, eb = np.flatnonzero(a), np.flatnonzero(b)
        out = np.zeros(self.order, dtype=bool)
        out[np.asarray(self.add(ea[:, None], eb[None, :])).ravel()] = True
        return out

    def all_submodules(self) -> list[np.ndarray]:
        found: dict[bytes, np.ndarray] = {}
        cyclic = {}
        for g in range(self.order):
            m = self._cyclic_submodule(g)
            cyclic.setdefault(_mask_key(m), m)
        found.update(cyclic)
        queue = list(cyclic.values())
        while queue:
            m = queue.pop()
            for c in cyclic.values():
                s = self._sum(m, c)
                k = _mask_key(s)
                if k not in found:
                    found[k] = s
                    queue.append(s)
        subs = list(found.values())
        subs.sort(key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))
        return subs

    def ideal_times_module(self, i: Ideal) -> np.ndarray:
        """The submodule ``IM``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[self.action[i.array].ravel()] = True
        return self._additive_closure(mask)


class IdealizationRing(DerivedRing):
    def __init__(self, base: FiniteRing, module: ModuleSpec, spec: RingSpec | None = None):
        if module.ring != base:
            raise RingError("module is over another ring")
        order = base.order * module.order
        _check_derived_order(order, "idealization")
        self.base = base
        self.module = module
        self.m_order = module.order
        super().__init__(order, spec or Idealization(base.spec, module.to_json()), base.one * module.order)

    def split(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x // self.m_order, x % self.m_order

    def join(self, r, m):
        return np.asarray(r, dtype=np.int64) * self.m_order + np.asarray(m, dtype=np.int64)

    def _add(self, a, b):
        r1, m1 = self.split(a)
        r2, m2 = self.split(b)
        return self.join(self.base._add(r1, r2), self.module.add(m1, m2))

    def _mul(self, a, b):
        r1, m1 = self.split(a)
        r2, m2 = self.split(b)
        act = self.module.action
        return self.join(self.base._mul(r1, r2), self.module.add(act[r1, m2], act[r2, m1]))

    def _neg(self, a):
        r, m = self.split(a)
        return self.join(self.base._neg(r), self.module.neg(m))

    def element_repr(self, x: int) -> str:
        r, m = self.split(x)
        return f"({int(r)},{int(m)})"

    def _pairs(self, rmask: np.ndarray, mmask: np.ndarray) -> np.ndarray:
        rs, ms = np.flatnonzero(rmask), np.flatnonzero(mmask)
        mask = np.zeros(self.order, dtype=bool)
        mask[(rs[:, None] * self.m_order + ms[None, :]).ravel()] = True
        return mask

    def ideal_plus(self, i: Ideal, submodule: np.ndarray | None = None) -> Ideal:
        """``I(+)N``; ``submodule=None`` means ``N = M``."""
        n_mask = np.ones(self.m_order, dtype=bool) if submodule is None else np.asarray(submodule, dtype=bool)
        im = self.module.ideal_times_module(i)
        if (im & ~n_mask).any():
            raise PreconditionError("IM is not contained in N")
        return Ideal(self, self._pairs(i.mask, n_mask))

    def multset_plus_zero(self, s: MultSet) -> MultSet:
        zero = np.zeros(self.m_order, dtype=bool)
        zero[0] = True
        return MultSet(self, self._pairs(s.mask, zero))

    def multset_plus_module(self, s: MultSet) -> MultSet:
        return MultSet(self, self._pairs(s.mask, np.ones(self.m_order, dtype=bool)))

    def nilradical_formula(self) -> np.ndarray:
        """``sqrt(0) (+) M`` computed from the base ring."""
        return self._pairs(self.base.nil_mask, np.ones(self.m_order, dtype=bool))


def idealization(r: FiniteRing, m: ModuleSpec) -> IdealizationRing:
    return IdealizationRing(r, m)


# ---------------------------------------------------------------------------
# Amalgamation
# ---------------------------------------------------------------------------


class AmalgamationRing(DerivedRing):
    """``R |><|^f J = {(r, f(r) + j)}`` inside ``R x R'``."""

    def __init__(self, hom: RingHom, j: Ideal, spec: RingSpec | None = None):
        if j.ring != hom.target:
            raise RingError("J must be an ideal of the target of f")
        src, tgt = hom.source, hom.target
        order = src.order * len(j)
        _check_derived_order(order, "amalgamation")
        if src.order * tgt.order > 4 * config.derived_cap():
            raise OrderCapError("amalgamation lookup would exceed the size cap")
        jl = len(j)
        seconds = np.sort(np.asarray(tgt._add(hom.map[:, None], j.array[None, :])), axis=1)
        index = np.full((src.order, tgt.order), -1, dtype=np.int64)
        rows = np.repeat(src.arange, jl)
        index[rows, seconds.ravel()] = np.arange(order)
        self.hom = hom
        self.j = j
        self.first = rows
        self.second = seconds.ravel().astype(np.int64)
        self.index = index
        gens = j.generators if j.generators is not None else j.elements
        spec = spec or Amalgamation(src.spec, tgt.spec, tuple(int(v) for v in hom.map), tuple(gens))
        super().__init__(order, spec, int(index[src.one, tgt.one]))

    def pair(self, x: int) -> tuple[int, int]:
        return int(self.first[x]), int(self.second[x])

    def _at(self, r, y):
        return self.index[r, y]

    def _add(self, a, b):
        src, tgt = self.hom.source, self.hom.target
        return self._at(src._add(self.first[a], self.first[b]), tgt._add(self.second[a], self.second[b]))

    def _mul(self, a, b):
        src, tgt = self.hom.source, self.hom.target
        return self._at(src._mul(self.first[a], self.first[b]), tgt._mul(self.second[a], self.second[b]))

    def _neg(self, a):
        return self._at(self.hom.source._neg(self.first[a]), self.hom.target._neg(self.second[a]))

    def element_repr(self, x: int) -> str:
        return f"({int(self.first[x])},{int(self.second[x])})"

    @cached_property
    def projection(self) -> RingHom:
        """``(r, f(r) + j) -> r``; onto, with kernel ``0 x J``."""
        return RingHom(self, self.hom.source, self.first, validate=False)

    @cached_property
    def ambient(self) -> ProductRing:
        return product_ring(self.hom.source, self.hom.target)

    @cached_property
    def inclusion(self) -> RingHom:
        amb = self.ambient
        return RingHom(self, amb, amb.encode([self.first, self.second]), validate=False)

    def amalg_ideal(self, i: Ideal) -> Ideal:
        """``I |><|^f J``."""
        return Ideal(self, i.mask[self.first])

    def amalg_kbar(self, k: Ideal) -> Ideal:
        """``{(a, f(a)+j) : f(a)+j in K}`` for an ideal K of R'."""
        if k.ring != self.hom.target:
            raise RingError("K must be an ideal of R'")
        return Ideal(self, k.mask[self.second])

    def amalg_multset(self, s: MultSet) -> MultSet:
        """``S |><|^f J``."""
        return MultSet(self, s.mask[self.first])

    def amalg_w(self, s: MultSet) -> MultSet:
        """``W = {(s, f(s))}``."""
        return MultSet(self, s.mask[self.first] & (self.second == self.hom.map[self.first]))

    def amalg_tbar(self, t: MultSet) -> MultSet:
        """``{(a, f(a)+j) : f(a)+j in T}`` for T multiplicatively closed in R'."""
        if t.ring != self.hom.target:
            raise RingError("T must live in R'")
        return MultSet(self, t.mask[self.second])

    def amalg_s_times_fs(self, s: MultSet) -> MultSet:
        """``(S x f(S))`` intersected with the amalgamation."""
        fs = np.zeros(self.hom.target.order, dtype=bool)
        fs[self.hom.map[s.array]] = True
        return MultSet(self, s.mask[self.first] & fs[self.second])

    def zero_times_j(self) -> Ideal:
        return Ideal(self, self.first == self.hom.source.zero)

    def nilradical_formula(self) -> np.ndarray:
        """``sqrt(0_R) |><|^f J``; equals the nilradical when J is nil."""
        return self.hom.source.nil_mask[self.first]


def amalgamation(f: RingHom, j: Ideal) -> AmalgamationRing:
    return AmalgamationRing(f, j)


def duplication(r: FiniteRing, j: Ideal) -> AmalgamationRing:
    return AmalgamationRing(identity_hom(r), j)


# ---------------------------------------------------------------------------
# Spec dispatch
# ---------------------------------------------------------------------------


def build_derived(spec: RingSpec) -> FiniteRing:
    cache = _derived_cache()
    hit = cache.get(spec.key())
    if hit is not None:
        return hit
    ring = _build(spec)
    if isinstance(ring, DerivedRing):
        ring.tabulate()
    cache[spec.key()] = ring
    return ring


_CACHE: dict[str, FiniteRing] = {}


def _derived_cache() -> dict[str, FiniteRing]:
    if len(_CACHE) > 512:
        _CACHE.clear()
    return _CACHE


def _build(spec: RingSpec) -> FiniteRing:
    if isinstance(spec, Quotient):
        base = build_ring(spec.of)
        return QuotientRing(base, ideal_generate(base, spec.gens), spec)
    if isinstance(spec, Localization):
        base = build_ring(spec.of)
        return LocalizedRing(base, multset_close(base, spec.seed), spec)
    if isinstance(spec, Idealization):
        base = build_ring(spec.of)
        return IdealizationRing(base, ModuleSpec.from_json(base, spec.module), spec)
    if isinstance(spec, Amalgamation):
        src, tgt = build_ring(spec.source), build_ring(spec.target)
        hom = make_hom(src, tgt, spec.hom)
        return AmalgamationRing(hom, ideal_generate(tgt, spec.gens), spec)
    raise InvalidSpecError(f"not a derived ring spec: {spec!r}")


def element_repr(r: FiniteRing, x: int) -> str:
    if isinstance(r, DerivedRing):
        return r.element_repr(x)
    if isinstance(r, ProductRing):
        return "(" + ",".join(str(c) for c in r.components(x)) + ")"
    return str(x)


__all__ = [
    "AmalgamationRing",
    "DegenerateLocalizationError",
    "ExtendContract",
    "HomomorphismError",
    "IdealizationRing",
    "LocalizedRing",
    "ModuleError",
    "ModuleSpec",
    "QuotientRing",
    "RingHom",
    "amalgamation",
    "build_derived",
    "compose",
    "duplication",
    "element_repr",
    "extend_contract",
    "hom_image_ideal",
    "hom_image_multset",
    "hom_preimage_ideal",
    "hom_preimage_multset",
    "identity_hom",
    "idealization",
    "localization",
    "localize_ideal",
    "localize_multset",
    "make_hom",
    "product_ideal",
    "product_ideal_mode",
    "product_multset",
    "product_ring",
    "quotient_ring",
]
