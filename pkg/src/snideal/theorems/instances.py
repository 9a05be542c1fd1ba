"""JSON encoding of check instances, so any reported instance can be replayed."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from ..constructions import RingHom, make_hom
from ..ideals import Ideal, MultSet
from ..rings import FiniteRing
from .corpus import ring_from_spec


class Submodule:
    """A submodule of an idealization's module, carried by its element mask."""

    def __init__(self, mask: np.ndarray):
        self.mask = np.asarray(mask, dtype=bool)

    @property
    def elements(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.mask)]


def encode(value: Any) -> Any:
    if isinstance(value, FiniteRing):
        # a distinct tag: instances themselves use "ring" as a key
        return {"ring_spec": value.spec.to_json()}
    if isinstance(value, Ideal):
        return {"ideal": list(value.elements), "in": value.ring.spec.to_json()}
    if isinstance(value, MultSet):
        return {"multset": list(value.elements), "in": value.ring.spec.to_json()}
    if isinstance(value, RingHom):
        return {"hom": [int(x) for x in value.map], "source": value.source.spec.to_json(),
                "target": value.target.spec.to_json()}
    if isinstance(value, Submodule):
        return {"submodule": value.elements}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _mask(r: FiniteRing, els) -> np.ndarray:
    m = np.zeros(r.order, dtype=bool)
    m[list(els)] = True
    return m


def decode(doc: Any) -> Any:
    if isinstance(doc, dict):
        if set(doc) == {"ring_spec"}:
            return ring_from_spec(doc["ring_spec"])
        if set(doc) == {"ideal", "in"}:
            r = ring_from_spec(doc["in"])
            return Ideal(r, _mask(r, doc["ideal"]))
        if set(doc) == {"multset", "in"}:
            r = ring_from_spec(doc["in"])
            return MultSet(r, _mask(r, doc["multset"]))
        if set(doc) == {"hom", "source", "target"}:
            return make_hom(ring_from_spec(doc["source"]), ring_from_spec(doc["target"]), doc["hom"])
        if set(doc) == {"submodule"}:
            return doc  # resolved against the module by the check that uses it
        return {k: decode(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [decode(v) for v in doc]
    return doc


def submodule_mask(doc, order: int) -> np.ndarray:
    if isinstance(doc, Submodule):
        return doc.mask
    m = np.zeros(order, dtype=bool)
    m[doc["submodule"]] = True
    return m


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))
