"""S-n-ideals of finite commutative rings."""

from __future__ import annotations

from .classify import (
    Classification,
    Verdict,
    all_s_n_ideals,
    classify_ideal,
    is_n_ideal,
    is_prime,
    is_primary,
    is_r_ideal,
    maximal_s_n_ideals,
    s_witnesses,
    zn_fast_classify,
)
from .ideals import Ideal, MultSet, all_ideals, colon, ideal_generate, multset_close, radical, saturation
from .rings import FiniteRing, build_ring, element_class, nilradical, ring_predicates

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "FiniteRing",
    "Ideal",
    "MultSet",
    "Verdict",
    "all_ideals",
    "all_s_n_ideals",
    "build_ring",
    "classify_ideal",
    "colon",
    "element_class",
    "ideal_generate",
    "is_n_ideal",
    "is_primary",
    "is_prime",
    "is_r_ideal",
    "maximal_s_n_ideals",
    "multset_close",
    "nilradical",
    "radical",
    "ring_predicates",
    "s_witnesses",
    "saturation",
    "zn_fast_classify",
]
