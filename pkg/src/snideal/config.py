"""Size caps shared by the whole package.

``SNIDEAL_MAX_ORDER`` in the environment overrides both construction caps.
"""

from __future__ import annotations

import os

SCHEMA_VERSION = 1

ZN_MAX_ORDER = 10**6          # formula-backed rings
DERIVED_MAX_ORDER = 65_536    # rings backed by lookup arrays
ENUMERATION_CAP = 4096        # generic ideal enumeration / pair scans
EXHAUSTIVE_TRIPLES_CAP = 512  # full associativity/distributivity scan below this order
SAMPLED_TRIPLES = 100_000


def _env_override() -> int | None:
    raw = os.environ.get("SNIDEAL_MAX_ORDER")
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SNIDEAL_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValueError("SNIDEAL_MAX_ORDER must be at least 2")
    return value


def zn_cap() -> int:
    return _env_override() or ZN_MAX_ORDER


def derived_cap() -> int:
    return _env_override() or DERIVED_MAX_ORDER


def enumeration_cap() -> int:
    return _env_override() or ENUMERATION_CAP
