"""Finite commutative rings with identity.

Elements of every ring are the indices ``0..order-1``.  Index ``0`` is always
the additive identity.  Indexing per variant:

* ``Zn(n)``: the residue itself.
* ``Product``: mixed radix, little-endian (first factor varies fastest).
* derived rings (quotient, localization, idealization, amalgamation): elements
  sorted by their canonical underlying representation, see
  :mod:`snideal.constructions`.

All arithmetic is vectorised: ``_add``/``_mul``/``_neg`` accept numpy integer
arrays (or scalars) and broadcast.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from . import config


class RingError(ValueError):
    """Base class for invalid ring constructions and arguments."""


class InvalidSpecError(RingError):
    pass


class OrderCapError(RingError):
    pass


class PreconditionError(RingError):
    """A construction's mathematical precondition does not hold."""


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


class RingSpec:
    """Construction recipe for a ring.  Serialises to a small JSON grammar."""

    def to_json(self) -> dict:
        raise NotImplementedError

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"RingSpec({self.key()})"


@dataclass(frozen=True, eq=False, repr=False)
class Zn(RingSpec):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise InvalidSpecError(f"Zn requires an integer n >= 2, got {self.n!r}")

    def to_json(self) -> dict:
        return {"zn": self.n}


@dataclass(frozen=True, eq=False, repr=False)
class Product(RingSpec):
    factors: tuple[RingSpec, ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise InvalidSpecError("a product needs at least two factors")

    def to_json(self) -> dict:
        return {"product": [f.to_json() for f in self.factors]}


@dataclass(frozen=True, eq=False, repr=False)
class Quotient(RingSpec):
    of: RingSpec
    gens: tuple[int, ...]

    def to_json(self) -> dict:
        return {"quotient": {"of": self.of.to_json(), "gens": list(self.gens)}}


@dataclass(frozen=True, eq=False, repr=False)
class Localization(RingSpec):
    of: RingSpec
    seed: tuple[int, ...]

    def to_json(self) -> dict:
        return {"localization": {"of": self.of.to_json(), "seed": list(self.seed)}}


@dataclass(frozen=True, eq=False, repr=False)
class Idealization(RingSpec):
    of: RingSpec
    module: Any  # JSON document, see constructions.ModuleSpec.from_json

    def to_json(self) -> dict:
        return {"idealization": {"of": self.of.to_json(), "module": self.module}}


@dataclass(frozen=True, eq=False, repr=False)
class Amalgamation(RingSpec):
    source: RingSpec
    target: RingSpec
    hom: tuple[int, ...]
    gens: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "amalgamation": {
                "source": self.source.to_json(),
                "target": self.target.to_json(),
                "hom": list(self.hom),
                "gens": list(self.gens),
            }
        }


def _int_list(raw, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in raw
    ):
        raise InvalidSpecError(f"{what} must be a list of integers")
    return tuple(raw)


def spec_from_json(doc: Any) -> RingSpec:
    """Parse the JSON ring grammar (see docs/schema.md)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or len(doc) != 1:
        raise InvalidSpecError(f"a ring spec is a one-key object, got {doc!r}")
    (kind, body), = doc.items()
    if kind == "zn":
        if not isinstance(body, int) or isinstance(body, bool):
            raise InvalidSpecError("zn takes an integer")
        return Zn(body)
    if kind == "product":
        if not isinstance(body, list):
            raise InvalidSpecError("product takes a list of specs")
        return Product(tuple(spec_from_json(f) for f in body))
    if not isinstance(body, dict):
        raise InvalidSpecError(f"{kind} takes an object")
    try:
        if kind == "quotient":
            return Quotient(spec_from_json(body["of"]), _int_list(body.get("gens", []), "gens"))
        if kind == "localization":
            return Localization(spec_from_json(body["of"]), _int_list(body.get("seed", []), "seed"))
        if kind == "idealization":
            return Idealization(spec_from_json(body["of"]), body.get("module", {"self": True}))
        if kind == "amalgamation":
            source = spec_from_json(body["source"])
            target = spec_from_json(body["target"]) if "target" in body else source
            hom = body.get("hom", "identity")
            if isinstance(hom, str):
                hom = _named_hom(hom, source, target)
            return Amalgamation(source, target, _int_list(hom, "hom"), _int_list(body.get("gens", []), "gens"))
    except KeyError as exc:
        raise InvalidSpecError(f"{kind} is missing field {exc}") from None
    raise InvalidSpecError(f"unknown ring kind {kind!r}")


def _named_hom(name: str, source: RingSpec, target: RingSpec) -> list[int]:
    if name == "identity":
        if source != target:
            raise InvalidSpecError("identity hom needs source == target")
        return list(range(build_ring(source).order))
    if name == "reduce":
        if not (isinstance(source, Zn) and isinstance(target, Zn)) or source.n % target.n:
            raise InvalidSpecError("'reduce' hom needs Zn -> Zm with m | n")
        return [x % target.n for x in range(source.n)]
    raise InvalidSpecError(f"unknown named hom {name!r}")


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------


def _index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


class FiniteRing:
    """A finite commutative ring with identity ``one`` and zero at index 0.

    Subclasses implement the vectorised ``_add``, ``_mul`` and ``_neg``.
    Derived data (tables, units, nilradical, ...) is computed lazily and cached.
    """

    backing = "formula"
    zero = 0

    def __init__(self, order: int, spec: RingSpec, one: int):
        if order < 2:
            raise PreconditionError("the zero ring is not a FiniteRing")
        self.order = int(order)
        self.spec = spec
        self.one = int(one)
        if self.one == self.zero:
            raise PreconditionError("zero == one")

    # -- identity ----------------------------------------------------------
    @cached_property
    def id(self) -> str:
        return self.spec.key()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteRing) and self.id == other.id

    def __hash__(self) -> int:
        return hash(self.id)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} order={self.order} {self.id}>"

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def arange(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- arithmetic --------------------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not (0 <= int(x) < self.order):
                raise IndexError(f"element {x} out of range for ring of order {self.order}")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self._add(a, b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self._mul(a, b))

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self._neg(a))

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self._add(a, self._neg(b)))

    def pow(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            raise ValueError("exponent must be non-negative")
        result, base = self.one, int(a)
        while k:
            if k & 1:
                result = int(self._mul(result, base))
            base = int(self._mul(base, base))
            k >>= 1
        return result

    def mul_all(self, a: int, xs) -> np.ndarray:
        """``a*x`` for every ``x`` in ``xs``."""
        return np.asarray(self._mul(np.int64(a), np.asarray(xs, dtype=np.int64)), dtype=np.int64)

    # -- cached tables -----------------------------------------------------
    def _require_enumerable(self, what: str) -> None:
        cap = config.enumeration_cap()
        if self.order > cap:
            raise OrderCapError(f"{what} needs order <= {cap}, ring has order {self.order}")

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_enumerable("a multiplication table")
        n = self.order
        out = np.empty((n, n), dtype=_index_dtype(n))
        ar = self.arange
        step = max(1, 2**22 // n)
        for lo in range(0, n, step):
            out[lo:lo + step] = self._mul(ar[lo:lo + step, None], ar[None, :])
        out.setflags(write=False)
        return out

    @cached_property
    def nil_mask(self) -> np.ndarray:
        # x nilpotent iff x^(2^K) == 0 once 2^K >= order (indices never exceed order).
        p = self.arange.copy()
        for _ in range(max(1, math.ceil(math.log2(self.order)))):
            p = np.asarray(self._mul(p, p), dtype=np.int64)
        mask = p == self.zero
        mask.setflags(write=False)
        return mask

    @cached_property
    def units_mask(self) -> np.ndarray:
        if self.order > config.enumeration_cap():
            mask = self._units_formula()
        else:
            mask = (self.mul_table == self.one).any(axis=1)
        mask.setflags(write=False)
        return mask

    def _units_formula(self) -> np.ndarray:
        raise OrderCapError(f"unit detection needs order <= {config.enumeration_cap()}")

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        if self.order > config.enumeration_cap():
            mask = ~self.units_mask  # finite ring: non-units are exactly the zero-divisors
        else:
            mask = (self.mul_table[:, 1:] == self.zero).any(axis=1)
        mask.setflags(write=False)
        return mask

    @cached_property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.units_mask)

    @cached_property
    def orbits(self) -> tuple[np.ndarray, np.ndarray]:
        """Orbits of the unit group acting by multiplication.

        Returns ``(orbit_of, reps)``: ``orbit_of[x]`` is the position in
        ``reps`` of the orbit containing ``x``; ``reps`` holds each orbit's
        least element, ascending.  Colon ideals and membership in ideals are
        constant on orbits, which the pair scans exploit.
        """
        least = self.mul_table[:, self.units].min(axis=1).astype(np.int64)
        reps, orbit_of = np.unique(least, return_inverse=True)
        return orbit_of, reps

    # -- misc --------------------------------------------------------------
    def nilpotency_index(self, x: int) -> int | None:
        self._check(x)
        if not self.nil_mask[x]:
            return None
        k, p = 1, int(x)
        while p != self.zero:
            p = int(self._mul(p, x))
            k += 1
        return k

    def describe(self) -> str:
        return describe_spec(self.spec)


class ZnRing(FiniteRing):
    """The integers modulo n; element index = residue."""

    def __init__(self, n: int):
        cap = config.zn_cap()
        if n > cap:
            raise OrderCapError(f"Z_{n} exceeds the formula-backed cap {cap}")
        super().__init__(n, Zn(n), 1)
        self.n = n

    def _add(self, a, b):
        return (np.asarray(a, dtype=np.int64) + b) % self.n

    def _mul(self, a, b):
        return (np.asarray(a, dtype=np.int64) * b) % self.n

    def _neg(self, a):
        return (-np.asarray(a, dtype=np.int64)) % self.n

    def _units_formula(self) -> np.ndarray:
        return np.gcd(self.arange, self.n) == 1


class ProductRing(FiniteRing):
    """Direct product; index = sum of component index * radix (little-endian)."""

    def __init__(self, factors: Sequence[FiniteRing], spec: RingSpec | None = None):
        factors = tuple(factors)
        if len(factors) < 2:
            raise InvalidSpecError("a product needs at least two factors")
        orders = [f.order for f in factors]
        order = math.prod(orders)
        if all(f.backing == "formula" for f in factors):
            cap = config.zn_cap()
        else:
            cap = config.derived_cap()
        if order > cap:
            raise OrderCapError(f"product of order {order} exceeds cap {cap}")
        self.factors = factors
        self.radices = np.cumprod([1] + orders[:-1]).astype(np.int64)
        self.backing = "formula" if all(f.backing == "formula" for f in factors) else "table"
        one = int(sum(f.one * r for f, r in zip(factors, self.radices)))
        super().__init__(order, spec or Product(tuple(f.spec for f in factors)), one)

    def decode(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        return [(idx // r) % f.order for f, r in zip(self.factors, self.radices)]

    def encode(self, parts) -> np.ndarray:
        out = 0
        for p, r in zip(parts, self.radices):
            out = out + np.asarray(p, dtype=np.int64) * r
        return np.asarray(out, dtype=np.int64)

    def element(self, *parts: int) -> int:
        if len(parts) != len(self.factors):
            raise ValueError("wrong number of components")
        for p, f in zip(parts, self.factors):
            f._check(p)
        return int(self.encode(parts))

    def components(self, x: int) -> tuple[int, ...]:
        self._check(x)
        return tuple(int(p) for p in self.decode(x))

    def _lift(self, op, a, b):
        da, db = self.decode(a), self.decode(b)
        return self.encode([getattr(f, op)(x, y) for f, x, y in zip(self.factors, da, db)])

    def _add(self, a, b):
        return self._lift("_add", a, b)

    def _mul(self, a, b):
        return self._lift("_mul", a, b)

    def _neg(self, a):
        return self.encode([f._neg(x) for f, x in zip(self.factors, self.decode(a))])

    def _units_formula(self) -> np.ndarray:
        parts = self.decode(self.arange)
        mask = np.ones(self.order, dtype=bool)
        for f, p in zip(self.factors, parts):
            mask &= f.units_mask[p]
        return mask


# ---------------------------------------------------------------------------
# Construction entry point
# ---------------------------------------------------------------------------


def build_ring(spec: RingSpec | dict | str, *, verify: bool | None = None) -> FiniteRing:
    """Build the ring described by ``spec``.

    ``verify=None`` runs the axiom check on derived (lookup-backed) rings only;
    Zn and products of formula-backed rings are correct by construction.
    """
    if not isinstance(spec, RingSpec):
        spec = spec_from_json(spec)
    if isinstance(spec, Zn):
        ring: FiniteRing = ZnRing(spec.n)
    elif isinstance(spec, Product):
        ring = ProductRing([build_ring(f, verify=verify) for f in spec.factors], spec)
    else:
        from . import constructions

        ring = constructions.build_derived(spec)
    if verify or (verify is None and ring.backing == "table" and not getattr(ring, "axioms_verified", False)):
        report = verify_axioms(ring)
        if not report.ok:
            raise PreconditionError(f"ring axioms fail for {spec.key()}: {report.failures[:3]}")
        ring.axioms_verified = True
        ring.axiom_report = report
    return ring


def describe_spec(spec: RingSpec) -> str:
    """Short human-readable name, e.g. ``Z_12 x Z_4``."""
    if isinstance(spec, Zn):
        return f"Z_{spec.n}"
    if isinstance(spec, Product):
        return " x ".join(
            f"({describe_spec(f)})" if isinstance(f, Product) else describe_spec(f) for f in spec.factors
        )
    if isinstance(spec, Quotient):
        return f"{describe_spec(spec.of)}/<{','.join(map(str, spec.gens))}>"
    if isinstance(spec, Localization):
        return f"S^-1 {describe_spec(spec.of)} [S=<{','.join(map(str, spec.seed))}>]"
    if isinstance(spec, Idealization):
        return f"{describe_spec(spec.of)}(+)M[{json.dumps(spec.module, sort_keys=True)}]"
    if isinstance(spec, Amalgamation):
        return f"{describe_spec(spec.source)} |><|^f <{','.join(map(str, spec.gens))}> in {describe_spec(spec.target)}"
    return spec.key()


# ---------------------------------------------------------------------------
# Element-level operations
# ---------------------------------------------------------------------------


def elem_arith(r: FiniteRing, op: str, *args: int) -> int:
    """Dispatch ``add``, ``mul``, ``neg``, ``sub`` or ``pow`` by name."""
    ops = {"add": r.add, "mul": r.mul, "neg": r.neg, "sub": r.sub, "pow": r.pow}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](*args)


@dataclass(frozen=True)
class ElementClass:
    element: int
    is_unit: bool
    is_nilpotent: bool
    is_zero_divisor: bool
    is_regular: bool
    nilpotency_index: int | None = None


def element_class(r: FiniteRing, x: int) -> ElementClass:
    r._check(x)
    zd = bool(r.zero_divisor_mask[x])
    return ElementClass(
        element=int(x),
        is_unit=bool(r.units_mask[x]),
        is_nilpotent=bool(r.nil_mask[x]),
        is_zero_divisor=zd,
        is_regular=not zd,
        nilpotency_index=r.nilpotency_index(x),
    )


def nilradical(r: FiniteRing):
    """The ideal of nilpotent elements."""
    from .ideals import Ideal

    return Ideal.from_mask(r, r.nil_mask)


@dataclass(frozen=True)
class RingPredicates:
    is_field: bool
    is_von_neumann_regular: bool
    is_un_ring: bool
    is_reduced: bool
    is_local: bool


def ring_predicates(r: FiniteRing) -> RingPredicates:
    table = r.mul_table
    units = r.units_mask
    nonzero = np.ones(r.order, dtype=bool)
    nonzero[r.zero] = False
    is_field = bool(units[nonzero].all())
    squares = table[r.arange, r.arange]
    # a = a^2 b for some b  <=>  a occurs in row a^2
    vnr = bool((table[squares] == r.arange[:, None]).any(axis=1).all())
    # every non-unit is unit * nilpotent
    products = np.zeros(r.order, dtype=bool)
    products[np.unique(table[np.ix_(r.units, np.flatnonzero(r.nil_mask))])] = True
    un = bool(products[~units].all())
    # local <=> non-units are closed under addition
    nonunits = np.flatnonzero(~units)
    sums = r._add(nonunits[:, None], nonunits[None, :])
    is_local = bool((~units[np.asarray(sums)]).all())
    return RingPredicates(
        is_field=is_field,
        is_von_neumann_regular=vnr,
        is_un_ring=un,
        is_reduced=int(r.nil_mask.sum()) == 1,
        is_local=is_local,
    )


# ---------------------------------------------------------------------------
# Axiom verification
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    ok: bool
    mode: str  # "exhaustive" or "sampled"
    triples_checked: int
    failures: list[str] = field(default_factory=list)


def verify_axioms(
    r: FiniteRing,
    *,
    exhaustive_cap: int | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> AxiomReport:
    """Check the commutative-ring axioms on ``r``.

    Pair laws are always checked exhaustively; associativity and
    distributivity are checked on every triple below ``exhaustive_cap`` and on
    ``samples`` random triples above it.
    """
    exhaustive_cap = config.EXHAUSTIVE_TRIPLES_CAP if exhaustive_cap is None else exhaustive_cap
    samples = config.SAMPLED_TRIPLES if samples is None else samples
    n = r.order
    failures: list[str] = []
    if r.zero == r.one:
        failures.append("zero == one")
    ar = r.arange

    def in_range(v) -> bool:
        v = np.asarray(v)
        return bool(((v >= 0) & (v < n)).all())

    step = max(1, 2**20 // n)
    for lo in range(0, n, step):
        a = ar[lo:lo + step, None]
        b = ar[None, :]
        s, p = r._add(a, b), r._mul(a, b)
        if not (in_range(s) and in_range(p)):
            failures.append(f"closure fails in rows {lo}..")
        if not np.array_equal(s, r._add(b, a)):
            failures.append(f"addition not commutative in rows {lo}..")
        if not np.array_equal(p, r._mul(b, a)):
            failures.append(f"multiplication not commutative in rows {lo}..")
    if not np.array_equal(r._add(ar, r.zero), ar):
        failures.append("zero is not an additive identity")
    if not np.array_equal(r._mul(ar, r.one), ar):
        failures.append("one is not a multiplicative identity")
    if not (r._add(ar, r._neg(ar)) == r.zero).all():
        failures.append("additive inverses fail")

    def triple_laws(a, b, c) -> list[str]:
        bad = []
        if not np.array_equal(r._add(r._add(a, b), c), r._add(a, r._add(b, c))):
            bad.append("addition not associative")
        if not np.array_equal(r._mul(r._mul(a, b), c), r._mul(a, r._mul(b, c))):
            bad.append("multiplication not associative")
        if not np.array_equal(r._mul(a, r._add(b, c)), r._add(r._mul(a, b), r._mul(a, c))):
            bad.append("distributivity fails")
        return bad

    cayley = getattr(r, "cayley", None)
    if cayley is None and n <= exhaustive_cap:
        cayley = (np.asarray(r._add(ar[:, None], ar[None, :]), dtype=np.int64),
                  np.asarray(r._mul(ar[:, None], ar[None, :]), dtype=np.int64))
    if cayley is not None and n <= exhaustive_cap:
        # row gathers on the tables: T[T[a]] is (ab)c over all (b, c)
        mode, checked = "exhaustive", n**3
        add, mul = cayley
        for x in range(n):
            ax, mx = add[x], mul[x]
            bad = []
            if not np.array_equal(add[ax], ax[add]):
                bad.append("addition not associative")
            if not np.array_equal(mul[mx], mx[mul]):
                bad.append("multiplication not associative")
            if not np.array_equal(mx[add], add[np.ix_(mx, mx)]):
                bad.append("distributivity fails")
            if bad:
                failures.extend(f"{msg} (a={x})" for msg in bad)
                break
    else:
        mode, checked = "sampled", samples
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, n, size=samples) for _ in range(3))
        failures.extend(triple_laws(a, b, c))
    return AxiomReport(ok=not failures, mode=mode, triples_checked=checked, failures=failures)
