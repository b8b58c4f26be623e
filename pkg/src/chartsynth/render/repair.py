"""Render-and-repair loop for unverified plotting scripts."""

from __future__ import annotations

from dataclasses import replace

from ..errors import AmbiguousCodeBlockError, NoCodeBlockError
from ..gateway.messages import ChatMessage, CompletionParams
from ..prompts import PromptTemplate
from ..synthesis.extraction import extract_code_block
from ..synthesis.records import CodeRecord
from .types import RenderLimits, RenderRequest, RenderResult, error_text

REPAIR_STEP_LABEL = "self-repair"


def repair_loop(
    record: CodeRecord,
    backend,
    renderer,
    max_iters: int,
    repair_template: PromptTemplate,
    output_path: str,
    limits: RenderLimits = RenderLimits(),
    usage_sink=None,
    params: CompletionParams | None = None,
) -> tuple[CodeRecord, RenderResult]:
    """Render ``record``; feed failures back to the backend up to ``max_iters``
    times. Returns the finished record (executable or discarded, never
    unverified) together with the last render result. Performs at most
    ``max_iters + 1`` renders.
    """
    if record.status != "unverified":
        raise ValueError(f"repair_loop expects an unverified record, got {record.status!r}")
    params = params or CompletionParams()
    code = record.code_text
    result = renderer.render(RenderRequest(code_text=code, output_path=output_path, limits=limits))
    attempts = 0
    while not result.ok and attempts < max_iters:
        attempts += 1
        prompt = repair_template.fill(code=code, error=error_text(result))
        reply, usage = backend.complete([ChatMessage(role="user", text=prompt)], params)
        if usage_sink is not None:
            usage_sink(REPAIR_STEP_LABEL, usage)
        try:
            code = extract_code_block(reply.text)
        except (NoCodeBlockError, AmbiguousCodeBlockError):
            # A reply without a single clean block burns the iteration.
            continue
        result = renderer.render(
            RenderRequest(code_text=code, output_path=output_path, limits=limits)
        )
    status = "executable" if result.ok else "discarded"
    finished = replace(record, code_text=code, status=status, repair_attempts=attempts)
    return finished, result


def repair_statistics(outcomes) -> dict[str, float]:
    """Fractions of a finished batch that were repaired into shape or discarded."""
    records = list(outcomes)
    if not records:
        raise ValueError("repair_statistics needs a non-empty batch")
    fixed = sum(1 for r in records if r.status == "executable" and r.repair_attempts >= 1)
    discarded = sum(1 for r in records if r.status == "discarded")
    total = len(records)
    return {"fixed_fraction": fixed / total, "discarded_fraction": discarded / total}
