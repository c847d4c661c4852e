"""Append-only JSONL cache of computed residues.

One file per quantity tag under the cache directory (override with the
ACONST_CACHE_DIR environment variable), one record per line, one record per
(tag, params, prime).  Appending is idempotent: records already present are
skipped byte-identically, so re-runs never grow or reorder the file.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from pathlib import Path

ENV_VAR = "ACONST_CACHE_DIR"


@dataclass(frozen=True)
class ResidueCacheRecord:
    tag: str
    params: dict
    prime: int
    residue: int

    def key(self) -> tuple:
        return (self.tag, json.dumps(self.params, sort_keys=True), self.prime)

    def to_json(self) -> str:
        return json.dumps(
            {
                "tag": self.tag,
                "params": self.params,
                "prime": self.prime,
                "residue": self.residue,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "ResidueCacheRecord":
        rec = json.loads(line)
        return cls(rec["tag"], rec["params"], rec["prime"], rec["residue"])


def cache_dir() -> Path:
    root = os.environ.get(ENV_VAR)
    if root:
        return Path(root)
    return Path.home() / ".cache" / "aconst"


def _tag_file(tag: str) -> Path:
    return cache_dir() / f"{tag}.jsonl"


def load_records(tag: str) -> list[ResidueCacheRecord]:
    path = _tag_file(tag)
    if not path.exists():
        return []
    out = []
    with path.open() as fh:
        for line in fh:
            if line.strip():
                out.append(ResidueCacheRecord.from_json(line))
    return out


def known_tags() -> list[str]:
    root = cache_dir()
    if not root.is_dir():
        return []
    return sorted(p.stem for p in root.glob("*.jsonl"))


def append_records(records: list[ResidueCacheRecord]) -> int:
    """Add records not already cached; returns how many were new."""
    added = 0
    by_tag: dict[str, list[ResidueCacheRecord]] = {}
    for rec in records:
        by_tag.setdefault(rec.tag, []).append(rec)
    for tag, recs in by_tag.items():
        existing = {r.key() for r in load_records(tag)}
        path = _tag_file(tag)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a") as fh:
            for rec in recs:
                if rec.key() not in existing:
                    fh.write(rec.to_json() + "\n")
                    existing.add(rec.key())
                    added += 1
    return added


def verify_sample(sample: int = 20, seed: int | None = None) -> tuple[int, list]:
    """Recompute a random sample of cached records; returns (checked, mismatches)."""
    from .searches import recompute

    rng = random.Random(seed)
    mismatches = []
    checked = 0
    for tag in known_tags():
        records = load_records(tag)
        if not records:
            continue
        for rec in rng.sample(records, min(sample, len(records))):
            fresh = recompute(rec.tag, rec.params, rec.prime)
            checked += 1
            if fresh != rec.residue:
                mismatches.append((rec, fresh))
    return checked, mismatches
