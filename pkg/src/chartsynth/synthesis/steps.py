"""Self-instruct and evol-instruct generation steps plus seed import.

Both generation flows follow the same two-turn shape: the first turn elicits
a plan, the second appends that plan and asks for the final script in a
single fenced block. Extraction failures get exactly one re-ask before the
step is discarded.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import AmbiguousCodeBlockError, NoCodeBlockError
from ..gateway.messages import ChatMessage, CompletionParams
from ..prompts import PromptLibrary
from ..render.types import RenderLimits, RenderRequest, RenderResult
from ..taxonomy import EvolutionDirection, TaxonomyRegistry, sample_generation_target
from .extraction import extract_code_block
from .records import CodePool, CodeRecord, make_record_id

SELF_INSTRUCT_LABEL = "self-instruct"
EVOL_INSTRUCT_LABEL = "evol-instruct"

_SEED_TYPE_HEADER = re.compile(r"^#\s*chart-type:\s*(.+?)\s*$", re.MULTILINE)


@dataclass(frozen=True)
class StepFailure:
    step_key: str
    reason: str


@dataclass(frozen=True)
class SeedRejection:
    path: str
    reason: str


def sample_few_shot(pool: CodePool, k: int, rng: random.Random) -> tuple[CodeRecord, ...]:
    """k distinct records, uniform without replacement."""
    records = pool.records()
    if len(records) < k:
        raise ValueError(f"pool has {len(records)} records, need at least {k}")
    return tuple(rng.sample(records, k))


def _two_turn_generation(
    first_prompt: str,
    second_prompt: str,
    backend,
    usage_sink,
    label: str,
    params: CompletionParams,
) -> str | None:
    """Run the plan/finalize exchange; returns the code or None if the reply
    never contained a single clean block (after one re-ask)."""
    opening = [ChatMessage(role="user", text=first_prompt)]
    plan, usage = backend.complete(opening, params)
    usage_sink(label, usage)
    conversation = opening + [plan, ChatMessage(role="user", text=second_prompt)]
    final, usage = backend.complete(conversation, params)
    usage_sink(label, usage)
    for attempt in range(2):
        try:
            return extract_code_block(final.text)
        except (NoCodeBlockError, AmbiguousCodeBlockError):
            if attempt == 0:
                final, usage = backend.complete(conversation, params)
                usage_sink(label, usage)
    return None


def self_instruct_step(
    pool: CodePool,
    registry: TaxonomyRegistry,
    backend,
    rng: random.Random,
    templates: PromptLibrary,
    usage_sink,
    step_key: str,
    few_shot_k: int = 3,
    params: CompletionParams | None = None,
) -> CodeRecord | StepFailure:
    if len(pool) == 0:
        raise ValueError("self-instruct needs a non-empty code pool")
    params = params or CompletionParams()
    chart_type, topic1, topic2 = sample_generation_target(registry, rng)
    demos = sample_few_shot(pool, few_shot_k, rng)
    first = templates.get("self_instruct_plan").fill(
        type=chart_type.minor,
        topic1=topic1,
        topic2=topic2,
        demo1=demos[0].code_text,
        demo2=demos[1].code_text,
        demo3=demos[2].code_text,
    )
    second = templates.get("self_instruct_final").text
    code = _two_turn_generation(first, second, backend, usage_sink, SELF_INSTRUCT_LABEL, params)
    if code is None:
        return StepFailure(step_key=step_key, reason="no usable code block after re-ask")
    return CodeRecord(
        id=make_record_id("self_instruct", step_key, code),
        source="self_instruct",
        chart_type=chart_type,
        topics=(topic1, topic2),
        complexity="easy",
        code_text=code,
        status="unverified",
    )


def evol_instruct_step(
    record: CodeRecord,
    direction: EvolutionDirection,
    backend,
    templates: PromptLibrary,
    usage_sink,
    step_key: str,
    params: CompletionParams | None = None,
) -> CodeRecord | StepFailure:
    if record.complexity != "easy":
        raise ValueError("only easy records can be evolved")
    if record.status != "executable":
        raise ValueError("only executable records can be evolved")
    params = params or CompletionParams()
    first = templates.get("evol_instruct_plan").fill(
        code=record.code_text, direction=direction.instruction_text
    )
    second = templates.get("evol_instruct_final").text
    code = _two_turn_generation(first, second, backend, usage_sink, EVOL_INSTRUCT_LABEL, params)
    if code is None:
        return StepFailure(step_key=step_key, reason="no usable code block after re-ask")
    return CodeRecord(
        id=make_record_id("evol_instruct", step_key, code),
        source="evol_instruct",
        chart_type=record.chart_type,
        topics=record.topics,
        complexity="hard",
        code_text=code,
        status="unverified",
        parent_id=record.id,
        evolution_direction=direction.id,
    )


def seed_chart_type(code_text: str, registry: TaxonomyRegistry):
    match = _SEED_TYPE_HEADER.search(code_text)
    if not match:
        return None
    minor = match.group(1)
    try:
        return registry.chart_type(minor)
    except KeyError:
        return None


def import_seeds(
    paths,
    registry: TaxonomyRegistry,
    renderer,
    images_dir: str | Path,
    limits: RenderLimits = RenderLimits(),
) -> tuple[CodePool, list[SeedRejection], dict[str, RenderResult]]:
    """Build a pool from seed script files, render-verifying each before
    admission. Returns (pool, rejections, render results by record id).

    Seed files declare their minor chart type in a ``# chart-type: <minor>``
    header so the record carries real taxonomy metadata.
    """
    pool = CodePool()
    rejections: list[SeedRejection] = []
    renders: dict[str, RenderResult] = {}
    images = Path(images_dir)
    images.mkdir(parents=True, exist_ok=True)
    for path in paths:
        path = Path(path)
        try:
            code_text = path.read_text(encoding="utf-8")
        except OSError as exc:
            rejections.append(SeedRejection(path=str(path), reason=f"unreadable: {exc}"))
            continue
        chart_type = seed_chart_type(code_text, registry)
        if chart_type is None:
            rejections.append(
                SeedRejection(path=str(path), reason="missing or unknown '# chart-type:' header")
            )
            continue
        record_id = make_record_id("seed", path.name, code_text)
        result = renderer.render(
            RenderRequest(
                code_text=code_text,
                output_path=str(images / f"{record_id}.png"),
                limits=limits,
            )
        )
        if not result.ok:
            rejections.append(
                SeedRejection(
                    path=str(path),
                    reason=f"render failed: {result.status} {result.error_class or ''}".strip(),
                )
            )
            continue
        record = CodeRecord(
            id=record_id,
            source="seed",
            chart_type=chart_type,
            topics=(),
            complexity="easy",
            code_text=code_text,
            status="executable",
        )
        pool.admit(record)
        renders[record.id] = result
    return pool, rejections, renders
