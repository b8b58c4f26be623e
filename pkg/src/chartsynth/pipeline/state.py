"""On-disk pipeline state: append-only per-stage journals plus stage markers.

The state directory is the single source of truth. Each stage journals one
entry per completed item as it finishes, keyed so a restarted run skips work
already done; resuming therefore converges on the same outputs under
deterministic backends. Derived artifacts (pool directory, dataset, reports)
are rewritten whole and sorted, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path


class StageJournal:
    def __init__(self, path: Path):
        self.path = path
        self._lock = threading.Lock()

    def read(self) -> dict[str, dict]:
        entries: dict[str, dict] = {}
        if not self.path.exists():
            return entries
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            body = json.loads(line)
            entries[body["key"]] = body
        return entries

    def append(self, key: str, payload: dict) -> None:
        body = {"key": key, **payload}
        line = json.dumps(body, sort_keys=True, separators=(",", ":"))
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")
                handle.flush()


class StateStore:
    def __init__(self, state_dir: str | Path):
        self.root = Path(state_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self._state_path = self.root / "state.json"
        self._lock = threading.Lock()

    # -- layout ----------------------------------------------------------

    @property
    def pool_dir(self) -> Path:
        return self.root / "pool"

    @property
    def images_dir(self) -> Path:
        return self.root / "images"

    @property
    def dataset_dir(self) -> Path:
        return self.root / "dataset"

    @property
    def reports_dir(self) -> Path:
        return self.root / "reports"

    def journal(self, stage: str) -> StageJournal:
        return StageJournal(self.root / "journals" / f"{stage}.jsonl")

    # -- stage markers -----------------------------------------------------

    def _read_state(self) -> dict:
        if not self._state_path.exists():
            return {"stages": {}}
        return json.loads(self._state_path.read_text(encoding="utf-8"))

    def _write_state(self, body: dict) -> None:
        tmp = self._state_path.with_suffix(".tmp")
        tmp.write_text(json.dumps(body, indent=2, sort_keys=True), encoding="utf-8")
        tmp.replace(self._state_path)

    def mark_complete(self, stage: str, meta: dict | None = None) -> None:
        with self._lock:
            body = self._read_state()
            body["stages"][stage] = {"complete": True, **(meta or {})}
            self._write_state(body)

    def is_complete(self, stage: str) -> bool:
        return bool(self._read_state()["stages"].get(stage, {}).get("complete"))

    def stage_meta(self, stage: str) -> dict:
        return dict(self._read_state()["stages"].get(stage, {}))
