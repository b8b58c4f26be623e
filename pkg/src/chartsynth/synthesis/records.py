"""Plotting-script records and the executable code pool."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import PoolAdmissionError
from ..taxonomy import ChartType

SOURCES = ("seed", "self_instruct", "evol_instruct")
STATUSES = ("unverified", "executable", "discarded")
COMPLEXITIES = ("easy", "hard")


def make_record_id(source: str, step_key: str, code_text: str) -> str:
    """Content-derived id, salted with provenance so identical scripts from
    different steps stay distinct."""
    payload = f"{source}:{step_key}:{code_text}".encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]


@dataclass
class CodeRecord:
    id: str
    source: str
    chart_type: ChartType
    topics: tuple[str, ...]
    complexity: str
    code_text: str
    status: str = "unverified"
    parent_id: str | None = None
    evolution_direction: int | None = None
    repair_attempts: int = 0

    def __post_init__(self):
        self.topics = tuple(self.topics)
        if self.source not in SOURCES:
            raise ValueError(f"invalid source {self.source!r}")
        if self.status not in STATUSES:
            raise ValueError(f"invalid status {self.status!r}")
        if self.complexity not in COMPLEXITIES:
            raise ValueError(f"invalid complexity {self.complexity!r}")
        if self.source == "seed" and self.parent_id is not None:
            raise ValueError("seed records cannot have a parent")
        if self.source == "evol_instruct":
            if self.parent_id is None:
                raise ValueError("evolved records need a parent_id")
            if self.complexity != "hard":
                raise ValueError("evolved records are hard by definition")
            if self.evolution_direction not in (1, 2, 3, 4):
                raise ValueError("evolved records need a direction in 1..4")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "source": self.source,
            "chart_type": {"major": self.chart_type.major, "minor": self.chart_type.minor},
            "topics": list(self.topics),
            "complexity": self.complexity,
            "status": self.status,
            "parent_id": self.parent_id,
            "evolution_direction": self.evolution_direction,
            "repair_attempts": self.repair_attempts,
        }

    @classmethod
    def from_json(cls, body: dict, code_text: str) -> "CodeRecord":
        return cls(
            id=body["id"],
            source=body["source"],
            chart_type=ChartType(body["chart_type"]["major"], body["chart_type"]["minor"]),
            topics=tuple(body["topics"]),
            complexity=body["complexity"],
            code_text=code_text,
            status=body["status"],
            parent_id=body.get("parent_id"),
            evolution_direction=body.get("evolution_direction"),
            repair_attempts=body.get("repair_attempts", 0),
        )


@dataclass
class CodePool:
    """Ordered collection of executable records; every member stays executable."""

    _records: list[CodeRecord] = field(default_factory=list)
    _by_id: dict[str, CodeRecord] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._by_id

    def get(self, record_id: str) -> CodeRecord:
        return self._by_id[record_id]

    def records(self) -> tuple[CodeRecord, ...]:
        return tuple(self._records)

    def records_by(self, complexity: str | None = None, sources: tuple[str, ...] | None = None):
        out = []
        for record in self._records:
            if complexity is not None and record.complexity != complexity:
                continue
            if sources is not None and record.source not in sources:
                continue
            out.append(record)
        return tuple(out)

    def admit(self, record: CodeRecord) -> "CodePool":
        if record.status != "executable":
            raise PoolAdmissionError(f"record {record.id} has status {record.status!r}")
        if record.id in self._by_id:
            raise PoolAdmissionError(f"duplicate record id {record.id}")
        self._records.append(record)
        self._by_id[record.id] = record
        return self


def admit(pool: CodePool, record: CodeRecord) -> CodePool:
    return pool.admit(record)


def save_pool(pool: CodePool, pool_dir: str | Path) -> None:
    """Persist as a directory: scripts/<id>.py plus a jsonl manifest, both
    ordered by id so repeated saves of the same pool are byte-identical."""
    root = Path(pool_dir)
    scripts = root / "scripts"
    scripts.mkdir(parents=True, exist_ok=True)
    lines = []
    for record in sorted(pool.records(), key=lambda r: r.id):
        (scripts / f"{record.id}.py").write_text(record.code_text, encoding="utf-8")
        lines.append(json.dumps(record.to_json(), sort_keys=True, separators=(",", ":")))
    (root / "manifest.jsonl").write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_pool(pool_dir: str | Path) -> CodePool:
    root = Path(pool_dir)
    pool = CodePool()
    manifest = root / "manifest.jsonl"
    if not manifest.exists():
        return pool
    for line in manifest.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        body = json.loads(line)
        code_text = (root / "scripts" / f"{body['id']}.py").read_text(encoding="utf-8")
        pool.admit(CodeRecord.from_json(body, code_text))
    return pool


def with_status(record: CodeRecord, status: str, **updates) -> CodeRecord:
    return replace(record, status=status, **updates)
