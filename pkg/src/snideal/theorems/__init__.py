"""Executable checks of S-n-ideal results over finite corpora."""

from __future__ import annotations

from . import checks_constructions, checks_core  # noqa: F401  (registration side effects)
from .corpus import DEFAULT_CORPUS, CorpusSpec
from .registry import REGISTRY, Check, Outcome, check_ids, get_check

__all__ = ["DEFAULT_CORPUS", "REGISTRY", "Check", "CorpusSpec", "Outcome", "check_ids", "get_check"]
