"""Append-only verdict cache for forcing checks.

One JSON object per line: {"g": ..., "h": ..., "mode": "r"|"R",
"verdict": "arrows"|"not-arrows", "engine_version": ..., "bad": [...]}, the
last field optional (a counterexample coloring, in the labeling of the
canonical key graph).  Keys are canonical graph6 strings (for the block mode,
the g component also carries the block sizes, since the verdict depends on
the block structure).  Lookups match on the full key including the engine
version, so bumping the version silently invalidates old entries without
touching the file.

Appends happen as whole lines under a file lock, so concurrent writers never
tear each other's records; unreadable lines are skipped with a warning.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Optional, Sequence

from filelock import FileLock

from .version import ENGINE_VERSION

log = logging.getLogger(__name__)

_VERDICTS = {"arrows": True, "not-arrows": False}


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache"
    )
    return Path(base) / "rainbowforce" / "results.jsonl"


class ResultCache:
    def __init__(self, path, engine_version: str = ENGINE_VERSION):
        self.path = Path(path)
        self.engine_version = engine_version
        self._mem: dict[
            tuple[str, str, str, str], tuple[bool, Optional[tuple[int, ...]]]
        ] = {}
        self._loaded = False
        self._pending: list[str] = []

    def _lock(self) -> FileLock:
        return FileLock(str(self.path) + ".lock")

    def load(self) -> None:
        """(Re)read the file; tolerates lines from other writers or versions."""
        self._mem.clear()
        self._loaded = True
        if not self.path.exists():
            return
        bad = 0
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = (rec["g"], rec["h"], rec["mode"], rec["engine_version"])
                    verdict = _VERDICTS[rec["verdict"]]
                    coloring = rec.get("bad")
                    if coloring is not None:
                        coloring = tuple(int(c) for c in coloring)
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    bad += 1
                    continue
                self._mem[key] = (verdict, coloring)
        if bad:
            log.warning("skipped %d unreadable cache lines in %s", bad, self.path)

    def lookup(self, g_key: str, h_key: str, mode: str) -> Optional[bool]:
        rec = self.lookup_record(g_key, h_key, mode)
        return rec[0] if rec is not None else None

    def lookup_record(
        self, g_key: str, h_key: str, mode: str
    ) -> Optional[tuple[bool, Optional[tuple[int, ...]]]]:
        """(verdict, stored counterexample coloring or None), or None on miss."""
        if not self._loaded:
            self.load()
        return self._mem.get((g_key, h_key, mode, self.engine_version))

    def record(
        self,
        g_key: str,
        h_key: str,
        mode: str,
        arrows: bool,
        bad_coloring: Optional[Sequence[int]] = None,
    ) -> None:
        if not self._loaded:
            self.load()
        key = (g_key, h_key, mode, self.engine_version)
        coloring = tuple(bad_coloring) if bad_coloring is not None else None
        held = self._mem.get(key)
        # re-record only when it enriches an entry with the missing coloring
        if held is not None and (held[1] is not None or coloring is None):
            return
        self._mem[key] = (arrows, coloring)
        payload = {
            "g": g_key,
            "h": h_key,
            "mode": mode,
            "verdict": "arrows" if arrows else "not-arrows",
            "engine_version": self.engine_version,
        }
        if coloring is not None:
            payload["bad"] = list(coloring)
        self._pending.append(json.dumps(payload, sort_keys=True))

    def flush(self) -> None:
        if not self._pending:
            return
        payload = "".join(line + "\n" for line in self._pending)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock():
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(payload)
        self._pending.clear()

    def clear(self) -> None:
        self._pending.clear()
        self._mem.clear()
        self._loaded = True
        with self._lock():
            if self.path.exists():
                self.path.unlink()

    def __len__(self) -> int:
        if not self._loaded:
            self.load()
        return len(self._mem)

    def __enter__(self) -> "ResultCache":
        return self

    def __exit__(self, *exc) -> None:
        self.flush()
