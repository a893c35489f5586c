"""JSON files on disk keyed by a hash of canonical parameters."""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENV_CACHE_DIR = "DIHEDRAL_CACHE_DIR"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "dihedral"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class DiskCache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root is not None else None
        self.hits = 0
        self.misses = 0

    def _path(self, kind: str, key) -> Path:
        digest = hashlib.sha256(canonical(key).encode()).hexdigest()[:32]
        return self.root / kind / f"{digest}.json"

    def get(self, kind: str, key):
        if self.root is None:
            return None
        path = self._path(kind, key)
        try:
            with open(path) as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            self.misses += 1
            return None
        if entry.get("key") != key:
            self.misses += 1
            return None
        self.hits += 1
        return entry["value"]

    def put(self, kind: str, key, value) -> None:
        if self.root is None:
            return
        path = self._path(kind, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        with open(tmp, "w") as fh:
            fh.write(canonical({"key": key, "value": value}))
        os.replace(tmp, path)

    def fetch(self, kind: str, key, compute):
        value = self.get(kind, key)
        if value is None:
            value = compute()
            self.put(kind, key, value)
        return value
