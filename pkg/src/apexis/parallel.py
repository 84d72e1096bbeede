"""Sharded execution with optional process pool and resumable checkpoints.

Work is split into shards whose results are plain JSON values.  Results are
always merged in shard order, so the worker count affects timing only.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

log = logging.getLogger(__name__)


def default_jobs() -> int:
    raw = os.environ.get("APEXIS_JOBS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        log.warning("ignoring non-integer APEXIS_JOBS=%r", raw)
        return 1


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fingerprint(arg: Any) -> str:
    return hashlib.sha256(json.dumps(arg, sort_keys=True, default=repr).encode()).hexdigest()


class Runner:
    """Maps a picklable function over shard arguments.

    ``checkpoint`` names a directory; each finished shard is stored there
    under ``<task>/<index>.json`` and reused on the next run.
    """

    def __init__(self, jobs: int = 1, checkpoint: str | os.PathLike | None = None):
        self.jobs = max(1, int(jobs))
        self.checkpoint = Path(checkpoint) if checkpoint else None

    def map(self, task: str, fn: Callable[[Any], Any], args: Sequence[Any]) -> list[Any]:
        results: list[Any] = [None] * len(args)
        todo = []
        for i, a in enumerate(args):
            cached = self._load(task, i)
            if cached is not None and cached.get("args") != _fingerprint(a):
                log.warning("discarding checkpoint %s/%05d: shard arguments changed", task, i)
                cached = None
            if cached is not None:
                results[i] = cached["result"]
            else:
                todo.append(i)
        if todo:
            log.info("%s: %d shards to run (%d cached)", task, len(todo), len(args) - len(todo))
        if self.jobs == 1 or len(todo) <= 1:
            for i in todo:
                results[i] = fn(args[i])
                self._store(task, i, args[i], results[i])
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                futures = {i: pool.submit(fn, args[i]) for i in todo}
                for i in todo:
                    results[i] = futures[i].result()
                    self._store(task, i, args[i], results[i])
        return results

    def _path(self, task: str, i: int) -> Path | None:
        if self.checkpoint is None:
            return None
        return self.checkpoint / task / f"{i:05d}.json"

    def _load(self, task: str, i: int):
        p = self._path(task, i)
        if p is None or not p.exists():
            return None
        try:
            return json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            log.warning("discarding unreadable checkpoint %s", p)
            return None

    def _store(self, task: str, i: int, arg: Any, result: Any) -> None:
        p = self._path(task, i)
        if p is not None:
            atomic_write(p, json.dumps({"args": _fingerprint(arg), "result": result}, sort_keys=True))
