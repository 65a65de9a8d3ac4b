"""Content-addressed on-disk cache for mutation classes and seed sets.

Keys hash the input that determines the artifact (a canonical quiver form
for classes, the labelled matrix for seed sets since g-vectors depend on
the labelling), the budget, and the package version. Values are the
canonical JSON text of the artifact.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .io import dumps, write_atomic


class CacheMismatch(RuntimeError):
    """A cached artifact differs from a fresh recomputation."""


@dataclass(frozen=True)
class CacheEntry:
    key: str
    kind: str
    text: str
    hit: bool


def cache_key(kind: str, payload, version: str) -> str:
    blob = json.dumps({"kind": kind, "payload": payload, "version": version}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    def __init__(self, root: str | Path | None, version: str, verify: bool = False):
        self.root = Path(root) if root else None
        self.version = version
        self.verify = verify
        self.hits = 0
        self.misses = 0

    def path(self, key: str) -> Path:
        assert self.root is not None
        return self.root / key[:2] / f"{key}.json"

    def fetch(self, kind: str, payload, compute: Callable[[], dict]) -> CacheEntry:
        """Cached JSON text for ``payload``, computing and storing it on a miss.

        In verify mode every hit is recomputed and compared byte for byte.
        """
        key = cache_key(kind, payload, self.version)
        if self.root is None:
            return CacheEntry(key, kind, dumps(compute()), False)
        p = self.path(key)
        if p.exists():
            text = p.read_text(encoding="utf-8")
            self.hits += 1
            if self.verify:
                fresh = dumps(compute())
                if fresh != text:
                    raise CacheMismatch(f"cache entry {key} ({kind}) differs from recomputation")
            return CacheEntry(key, kind, text, True)
        self.misses += 1
        text = dumps(compute())
        write_atomic(p, text)
        return CacheEntry(key, kind, text, False)
