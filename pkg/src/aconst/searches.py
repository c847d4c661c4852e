"""Prime searches for vanishing components (Wilson-type and e-type zeros).

Both quantities vanish only at rare primes; a scan reports the hits in a
window and hands every computed residue to the cache so re-runs are free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cache import ResidueCacheRecord
from .dobinski import _d_sums_mod
from .euler import _wilson_component

SEARCH_TARGETS = ("eA-zero", "wilson")


def e_component(p: int) -> int:
    """Residue of sum_{k<p} 1/k! mod p (the e-analogue's p-component)."""
    return _d_sums_mod(1, 0, Fraction(1), p)[0]


def wilson_component(p: int) -> int:
    """Residue of ((p-1)! + 1)/p mod p (the Wilson quotient)."""
    return _wilson_component(p)


_TARGET_FNS = {"eA-zero": ("e_A", e_component), "wilson": ("wilson_q", wilson_component)}


def search_zero_primes(
    target: str, window: Sequence[int]
) -> tuple[list[int], list[ResidueCacheRecord]]:
    """Primes in the window whose target residue is zero, plus all records."""
    if target not in _TARGET_FNS:
        raise ValueError(f"unknown search target {target!r}")
    tag, fn = _TARGET_FNS[target]
    hits = []
    records = []
    for p in window:
        residue = fn(p)
        records.append(ResidueCacheRecord(tag, {}, p, residue))
        if residue == 0:
            hits.append(p)
    return hits, records


def recompute(tag: str, params: dict, p: int) -> int:
    """Fresh recomputation for cache verification."""
    for target, (t, fn) in _TARGET_FNS.items():
        if t == tag:
            return fn(p)
    raise ValueError(f"no recompute rule for tag {tag!r}")
