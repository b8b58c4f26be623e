"""Dataset assembly: on-disk layout, manifest round-trip, layout classification.

Output layout under ``out_dir``::

    manifest.jsonl   header line, then one chart entry per line (sorted by id)
    qa.jsonl         one Q&A record per line (sorted by id)
    images/<id>.png
    code/<id>.py

All paths inside the files are relative to ``out_dir`` and every line is
canonical JSON, so packaging the same inputs twice is byte-identical.
"""

from __future__ import annotations

import json
import shutil
from dataclasses import dataclass
from pathlib import Path

from ..errors import ManifestError
from ..qagen.generate import QARecord
from ..render.types import RenderResult
from ..synthesis.records import CodeRecord
from ..taxonomy import ChartType

SPLITS = ("train", "test")


@dataclass(frozen=True)
class ChartEntry:
    id: str
    image_path: str
    code_path: str
    chart_type: ChartType
    complexity: str
    is_overlay: bool
    is_multiplot: bool
    width: int
    height: int

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "image_path": self.image_path,
            "code_path": self.code_path,
            "chart_type": {"major": self.chart_type.major, "minor": self.chart_type.minor},
            "complexity": self.complexity,
            "is_overlay": self.is_overlay,
            "is_multiplot": self.is_multiplot,
            "width": self.width,
            "height": self.height,
        }

    @classmethod
    def from_json(cls, body: dict) -> "ChartEntry":
        return cls(
            id=body["id"],
            image_path=body["image_path"],
            code_path=body["code_path"],
            chart_type=ChartType(body["chart_type"]["major"], body["chart_type"]["minor"]),
            complexity=body["complexity"],
            is_overlay=body["is_overlay"],
            is_multiplot=body["is_multiplot"],
            width=body["width"],
            height=body["height"],
        )


@dataclass(frozen=True)
class QAEntry:
    """The fields a fine-tuning consumer needs, plus the chart link."""

    id: str
    chart_id: str
    image_path: str
    question: str
    answer: str
    orientation: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "chart_id": self.chart_id,
            "image_path": self.image_path,
            "question": self.question,
            "answer": self.answer,
            "orientation": self.orientation,
        }

    @classmethod
    def from_json(cls, body: dict) -> "QAEntry":
        return cls(**{k: body[k] for k in ("id", "chart_id", "image_path", "question", "answer", "orientation")})


@dataclass(frozen=True)
class DatasetManifest:
    split: str
    charts: tuple[ChartEntry, ...]
    qa: tuple[QAEntry, ...]


def classify_layout(record: CodeRecord, render: RenderResult) -> dict[str, bool]:
    """Overlay/multiplot flags from evolution metadata plus the axes count.

    Direction 3 is the overlay evolution; direction 4 adds a subplot. Records
    that organically carry several axes also count as multiplot unless they
    are overlay evolutions (a twin axis is part of the overlay).
    """
    direction = record.evolution_direction
    is_overlay = direction == 3
    is_multiplot = direction == 4 or (render.axes_count >= 2 and direction != 3)
    return {"is_overlay": is_overlay, "is_multiplot": is_multiplot}


def _canonical(line: dict) -> str:
    return json.dumps(line, sort_keys=True, separators=(",", ":"))


def package(
    charts: list[CodeRecord],
    renders: dict[str, RenderResult],
    qa_records: list[QARecord],
    split: str,
    out_dir: str | Path,
) -> DatasetManifest:
    """Write the dataset directory and return its manifest.

    Every chart needs a render result with an existing image; every Q&A must
    reference a packaged chart.
    """
    if split not in SPLITS:
        raise ManifestError(f"split must be one of {SPLITS}, got {split!r}")
    out = Path(out_dir)
    (out / "images").mkdir(parents=True, exist_ok=True)
    (out / "code").mkdir(parents=True, exist_ok=True)

    chart_ids = {record.id for record in charts}
    if len(chart_ids) != len(charts):
        raise ManifestError("duplicate chart ids in packaging input")

    entries: list[ChartEntry] = []
    for record in sorted(charts, key=lambda r: r.id):
        if record.status != "executable":
            raise ManifestError(f"chart {record.id} is not executable")
        render = renders.get(record.id)
        if render is None or not render.ok or render.image_path is None:
            raise ManifestError(f"chart {record.id} has no successful render")
        source_image = Path(render.image_path)
        if not source_image.exists():
            raise ManifestError(f"chart {record.id}: image file {source_image} missing")
        image_rel = f"images/{record.id}.png"
        code_rel = f"code/{record.id}.py"
        if source_image.resolve() != (out / image_rel).resolve():
            shutil.copyfile(source_image, out / image_rel)
        (out / code_rel).write_text(record.code_text, encoding="utf-8")
        flags = classify_layout(record, render)
        entries.append(
            ChartEntry(
                id=record.id,
                image_path=image_rel,
                code_path=code_rel,
                chart_type=record.chart_type,
                complexity=record.complexity,
                width=render.width,
                height=render.height,
                **flags,
            )
        )

    qa_entries: list[QAEntry] = []
    for qa in sorted(qa_records, key=lambda r: r.id):
        if qa.chart_id not in chart_ids:
            raise ManifestError(f"qa {qa.id} references absent chart {qa.chart_id}")
        qa_entries.append(
            QAEntry(
                id=qa.id,
                chart_id=qa.chart_id,
                image_path=f"images/{qa.chart_id}.png",
                question=qa.question,
                answer=qa.answer,
                orientation=qa.orientation,
            )
        )

    header = {"kind": "manifest", "split": split, "charts": len(entries), "qa": len(qa_entries)}
    manifest_lines = [_canonical(header)] + [_canonical(e.to_json()) for e in entries]
    (out / "manifest.jsonl").write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    qa_lines = [_canonical(e.to_json()) for e in qa_entries]
    (out / "qa.jsonl").write_text("\n".join(qa_lines) + ("\n" if qa_lines else ""), encoding="utf-8")
    return DatasetManifest(split=split, charts=tuple(entries), qa=tuple(qa_entries))


def load_manifest(out_dir: str | Path) -> DatasetManifest:
    out = Path(out_dir)
    manifest_path = out / "manifest.jsonl"
    if not manifest_path.exists():
        raise ManifestError(f"no manifest.jsonl under {out}")
    lines = [line for line in manifest_path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines:
        raise ManifestError("manifest.jsonl is empty")
    header = json.loads(lines[0])
    if header.get("kind") != "manifest":
        raise ManifestError("manifest.jsonl does not start with a manifest header")
    charts = tuple(ChartEntry.from_json(json.loads(line)) for line in lines[1:])
    qa_path = out / "qa.jsonl"
    qa: tuple[QAEntry, ...] = ()
    if qa_path.exists():
        qa = tuple(
            QAEntry.from_json(json.loads(line))
            for line in qa_path.read_text(encoding="utf-8").splitlines()
            if line.strip()
        )
    chart_ids = {c.id for c in charts}
    for entry in qa:
        if entry.chart_id not in chart_ids:
            raise ManifestError(f"qa {entry.id} references absent chart {entry.chart_id}")
    return DatasetManifest(split=header["split"], charts=charts, qa=qa)
