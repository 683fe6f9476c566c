"""Shared memo table for class numbers, optionally persisted to disk.

The on-disk format is plain text, one ``D<TAB>h`` entry per line.  Reads are
lock-free dict lookups; writes are serialized by a lock.
"""
from __future__ import annotations

import logging
import os
import threading
from pathlib import Path

log = logging.getLogger(__name__)

ENV_VAR = "ABVAR_CACHE"


class ClassNumberCache:
    def __init__(self):
        self._table: dict[int, int] = {}
        self._lock = threading.Lock()
        self._dirty = False

    def get(self, disc: int) -> int | None:
        return self._table.get(disc)

    def put(self, disc: int, h: int) -> None:
        with self._lock:
            old = self._table.get(disc)
            if old is not None and old != h:
                raise ValueError(f"cache conflict for D={disc}: {old} != {h}")
            if old is None:
                self._table[disc] = h
                self._dirty = True

    def __len__(self):
        return len(self._table)

    def __contains__(self, disc):
        return disc in self._table

    def items(self):
        return sorted(self._table.items())

    def clear(self) -> None:
        with self._lock:
            self._table.clear()
            self._dirty = True

    def load(self, path: str | os.PathLike) -> int:
        """Merge entries from ``path``; returns the number of lines read."""
        path = Path(path)
        if not path.exists():
            return 0
        n = 0
        with path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    d, h = (int(x) for x in line.split("\t"))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: malformed cache line {line!r}") from exc
                try:
                    self.put(d, h)
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from exc
                n += 1
        self._dirty = False
        return n

    def dump(self, path: str | os.PathLike) -> None:
        path = Path(path)
        with self._lock:
            tmp = path.with_name(path.name + ".tmp")
            with tmp.open("w") as fh:
                for d, h in sorted(self._table.items()):
                    fh.write(f"{d}\t{h}\n")
            tmp.replace(path)
            self._dirty = False

    @property
    def dirty(self) -> bool:
        return self._dirty


CLASS_NUMBERS = ClassNumberCache()


def resolve_cache_path(flag: str | None) -> str | None:
    """Flag beats environment; neither means no persistence."""
    if flag:
        return flag
    return os.environ.get(ENV_VAR) or None
