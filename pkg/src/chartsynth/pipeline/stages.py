"""Stage implementations and the runtime wiring them together.

Every stage journals one entry per finished item; re-running a completed
stage finds all its keys journaled and performs no backend calls. Item
ordering never depends on thread scheduling: work fans out to a pool, but all
derived views (code pool, dataset, reports) are rebuilt from journals in
sorted key order.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import (
    AllVerdictsUnparseableError,
    ConfigError,
    MalformedReplyError,
    PrerequisiteError,
    StageError,
)
from ..evaluation.harness import (
    EvalItem,
    JudgeResult,
    build_breakdown,
    build_cot_prompt,
    classify_error,
    judge,
    relaxed_accuracy,
)
from ..gateway.backends import BoundedBackend, HttpBackend, ReplayBackend
from ..gateway.ledger import CostLedger, PriceSheet, render_cost_report, report_cost
from ..gateway.messages import ChatMessage, CompletionParams, Usage, conversation_digest
from ..gateway.scripted import ScriptedBackend
from ..packaging.manifest import load_manifest, package
from ..packaging.stats import compute_stats, render_stats_block
from ..prompts import PromptLibrary
from ..qagen.generate import QARecord, generate_answer, generate_questions, make_qa_id
from ..qagen.rouge import dedup_filter
from ..quality.ensemble import filter_chart, filter_qa, judge_qa, rate_chart
from ..quality.kappa import cohen_kappa, load_annotations
from ..render.repair import repair_loop
from ..render.runner import SubprocessRenderer
from ..render.stub import StubRenderer
from ..render.types import RenderLimits, RenderResult
from ..synthesis.records import CodePool, CodeRecord
from ..synthesis.steps import StepFailure, evol_instruct_step, import_seeds, self_instruct_step
from ..taxonomy import load_registry, pick_evolution_direction
from .config import PipelineConfig
from .state import StateStore

SEED_DIR_PACKAGE = "chartsynth.assets.seeds"


@dataclass
class StageReport:
    stage: str
    processed: int = 0
    skipped: int = 0
    discarded: int = 0
    failed: int = 0
    interrupted: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "processed": self.processed,
            "skipped": self.skipped,
            "discarded": self.discarded,
            "failed": self.failed,
            "interrupted": self.interrupted,
            "details": self.details,
        }

    def render_text(self) -> str:
        lines = [
            f"stage: {self.stage}",
            f"  processed: {self.processed}  skipped: {self.skipped}"
            f"  discarded: {self.discarded}  failed: {self.failed}",
        ]
        for key in sorted(self.details):
            lines.append(f"  {key}: {self.details[key]}")
        if self.interrupted:
            lines.append("  interrupted: stage stopped early, re-run to resume")
        return "\n".join(lines)


class PipelineRuntime:
    """Config-derived collaborators shared by the stages."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.state = StateStore(config.state_dir)
        registries = config.get("registries") or {}
        self.registry = load_registry(
            registries.get("chart_types"), registries.get("topics"), registries.get("directions")
        )
        self.templates = PromptLibrary.load(config.get("prompts_dir"))
        self.params = CompletionParams(
            temperature=float(config.get("completion", "temperature")),
            max_tokens=int(config.get("completion", "max_tokens")),
            seed=config.get("completion", "seed_param"),
        )
        self.limits = RenderLimits(
            wall_clock_s=float(config.get("renderer", "timeout_s")),
            memory_bytes=int(config.get("renderer", "memory_mb")) * 1024 * 1024,
        )
        self.renderer = self._build_renderer()
        self.synthesis_backend = self._build_backend(config.get("backends", "synthesis"))
        self.judge_backend = self._build_backend(config.get("backends", "judge"))
        self.candidate_backend = self._build_backend(config.get("backends", "candidate"))
        self.ensemble = [self._build_backend(body) for body in config.get("backends", "ensemble")]

    def _build_renderer(self):
        renderer = self.config.get("renderer")
        if renderer["kind"] == "stub":
            return StubRenderer(width=renderer["stub_width"], height=renderer["stub_height"])
        return SubprocessRenderer(command=renderer["command"], dpi=renderer["dpi"])

    def _build_backend(self, body: dict):
        kind = body["kind"]
        if kind == "scripted":
            backend = ScriptedBackend(
                model_id=body["model_id"],
                failure_rate=float(body.get("failure_rate", 0.0)),
                permanent_rate=float(body.get("permanent_rate", 0.0)),
            )
        elif kind == "replay":
            backend = ReplayBackend(body["fixtures_dir"], model_id=body["model_id"])
        else:
            backend = HttpBackend(
                url=body["url"],
                model=body["model"],
                api_key_env=body.get("api_key_env", ""),
                model_id=body.get("model_id"),
                timeout_s=float(body.get("timeout_s", 120.0)),
            )
        return BoundedBackend(backend, max_inflight=int(self.config.get("concurrency", "max_inflight")))

    def rng(self, stage: str, key: str | int) -> random.Random:
        return random.Random(f"{self.config.get('seed')}:{stage}:{key}")

    def seed_paths(self) -> list[Path]:
        seeds_dir = self.config.get("seeds_dir")
        if seeds_dir is None:
            from importlib import resources

            root = Path(resources.files(SEED_DIR_PACKAGE))
        else:
            root = Path(seeds_dir)
        return sorted(p for p in root.glob("*.py") if p.name != "__init__.py")


# ---------------------------------------------------------------------------
# shared helpers


def _run_items(runtime: PipelineRuntime, stage: str, items, worker, serial: bool = False) -> StageReport:
    """Run ``worker(key, item, usage_sink)`` for every item not yet journaled.

    The worker returns the journal payload for its key; per-item usage is
    collected through the sink and stored inside the entry so the cost ledger
    can be rebuilt from journals alone.
    """
    journal = runtime.state.journal(stage)
    done = journal.read()
    report = StageReport(stage=stage)
    todo = [(key, item) for key, item in items if key not in done]
    report.skipped = len(items) - len(todo)

    def run_one(key, item):
        usages: list[list] = []

        def sink(label: str, usage: Usage):
            usages.append([label, usage.prompt_tokens, usage.completion_tokens])

        payload = worker(key, item, sink)
        payload["usages"] = usages
        return payload

    if serial or len(todo) <= 1:
        try:
            for key, item in todo:
                payload = run_one(key, item)
                journal.append(key, payload)
                _count(report, payload)
        except KeyboardInterrupt:
            report.interrupted = True
        return report

    workers = int(runtime.config.get("concurrency", "workers"))
    executor = ThreadPoolExecutor(max_workers=workers)
    futures = {executor.submit(run_one, key, item): key for key, item in todo}
    pending = set(futures)
    try:
        while pending:
            finished, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in finished:
                payload = future.result()
                journal.append(futures[future], payload)
                _count(report, payload)
    except KeyboardInterrupt:
        report.interrupted = True
    finally:
        executor.shutdown(wait=False, cancel_futures=True)
    return report


def _count(report: StageReport, payload: dict) -> None:
    report.processed += 1
    outcome = payload.get("outcome")
    if outcome == "discarded":
        report.discarded += 1
    elif outcome == "failed":
        report.failed += 1


def _require(runtime: PipelineRuntime, *stages: str) -> None:
    for stage in stages:
        if not runtime.state.is_complete(stage):
            raise PrerequisiteError(f"stage '{stage}' must complete first")


def _record_from_entry(entry: dict) -> CodeRecord:
    return CodeRecord.from_json(entry["record"], entry["code_text"])


def _render_from_entry(runtime: PipelineRuntime, entry: dict) -> RenderResult:
    body = entry["render"]
    return RenderResult(
        status="ok",
        image_path=str(runtime.state.root / body["image"]),
        width=body["width"],
        height=body["height"],
        axes_count=body["axes_count"],
    )


def build_pool(runtime: PipelineRuntime) -> tuple[CodePool, dict[str, RenderResult]]:
    """Current executable pool plus render info, rebuilt from journals in
    sorted key order (thread completion order never leaks in)."""
    pool = CodePool()
    renders: dict[str, RenderResult] = {}
    seed_entries = runtime.state.journal("seed-import").read()
    for key in sorted(seed_entries):
        entry = seed_entries[key]
        if entry.get("outcome") != "admitted":
            continue
        record = _record_from_entry(entry)
        pool.admit(record)
        renders[record.id] = _render_from_entry(runtime, entry)
    repair_entries = runtime.state.journal("render-repair").read()
    for key in sorted(repair_entries):
        entry = repair_entries[key]
        if entry.get("outcome") != "executable":
            continue
        record = _record_from_entry(entry)
        pool.admit(record)
        renders[record.id] = _render_from_entry(runtime, entry)
    return pool, renders


def pending_unverified(runtime: PipelineRuntime) -> list[CodeRecord]:
    """Generated records awaiting render-repair, sorted by record id."""
    seen = set(runtime.state.journal("render-repair").read())
    pending = []
    for stage in ("synthesize", "evolve"):
        entries = runtime.state.journal(stage).read()
        for key in sorted(entries):
            entry = entries[key]
            if entry.get("outcome") != "generated":
                continue
            record = _record_from_entry(entry)
            if record.id not in seen:
                pending.append(record)
    return sorted(pending, key=lambda r: r.id)


def _save_pool_dir(runtime: PipelineRuntime) -> int:
    from ..synthesis.records import save_pool

    pool, _ = build_pool(runtime)
    save_pool(pool, runtime.state.pool_dir)
    return len(pool)


# ---------------------------------------------------------------------------
# stages


def stage_seed_import(runtime: PipelineRuntime) -> StageReport:
    paths = runtime.seed_paths()
    if not paths:
        raise StageError("no seed scripts found")
    items = [(path.name, path) for path in paths]

    def worker(key, path, sink):
        pool, rejections, renders = import_seeds(
            [path], runtime.registry, runtime.renderer, runtime.state.images_dir, runtime.limits
        )
        if rejections:
            return {"outcome": "rejected", "reason": rejections[0].reason}
        record = pool.records()[0]
        render = renders[record.id]
        return {
            "outcome": "admitted",
            "record": record.to_json(),
            "code_text": record.code_text,
            "render": {
                "image": f"images/{record.id}.png",
                "width": render.width,
                "height": render.height,
                "axes_count": render.axes_count,
            },
        }

    report = _run_items(runtime, "seed-import", items, worker)
    if report.interrupted:
        return report
    entries = runtime.state.journal("seed-import").read()
    admitted = sum(1 for e in entries.values() if e["outcome"] == "admitted")
    rejected = len(entries) - admitted
    report.details.update({"pool_size": _save_pool_dir(runtime), "rejected": rejected})
    runtime.state.mark_complete("seed-import", {"admitted": admitted, "rejected": rejected})
    return report


def stage_synthesize(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "seed-import")
    pool, _ = build_pool(runtime)
    if runtime.config.get("sampling", "few_shot_complexity") == "easy":
        easy_pool = CodePool()
        for record in pool.records_by(complexity="easy"):
            easy_pool.admit(record)
        pool = easy_pool
    steps = int(runtime.config.get("counts", "self_instruct_steps"))
    few_shot_k = int(runtime.config.get("sampling", "few_shot_k"))
    if len(pool) < few_shot_k:
        raise StageError(f"pool too small ({len(pool)}) for {few_shot_k}-shot sampling")
    items = [(f"si:{i:05d}", i) for i in range(steps)]

    def worker(key, index, sink):
        rng = runtime.rng("self-instruct", index)
        result = self_instruct_step(
            pool,
            runtime.registry,
            runtime.synthesis_backend,
            rng,
            runtime.templates,
            sink,
            step_key=key,
            few_shot_k=few_shot_k,
            params=runtime.params,
        )
        if isinstance(result, StepFailure):
            return {"outcome": "discarded", "reason": result.reason}
        return {"outcome": "generated", "record": result.to_json(), "code_text": result.code_text}

    report = _run_items(runtime, "synthesize", items, worker)
    if report.interrupted:
        return report
    runtime.state.mark_complete("synthesize", {"steps": steps})
    report.details["pending_render"] = len(pending_unverified(runtime))
    return report


def stage_evolve(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "synthesize", "render-repair")
    pool, _ = build_pool(runtime)
    sources = tuple(runtime.config.get("sampling", "evolve_sources"))
    parents = sorted(pool.records_by(complexity="easy", sources=sources), key=lambda r: r.id)
    if not parents:
        raise StageError(f"no executable easy records from sources {sources} to evolve")
    steps = int(runtime.config.get("counts", "evol_instruct_steps"))
    items = [(f"ev:{i:05d}", i) for i in range(steps)]

    def worker(key, index, sink):
        rng = runtime.rng("evol-instruct", index)
        parent = rng.choice(parents)
        direction = pick_evolution_direction(runtime.registry, rng)
        result = evol_instruct_step(
            parent,
            direction,
            runtime.synthesis_backend,
            runtime.templates,
            sink,
            step_key=key,
            params=runtime.params,
        )
        if isinstance(result, StepFailure):
            return {"outcome": "discarded", "reason": result.reason}
        return {"outcome": "generated", "record": result.to_json(), "code_text": result.code_text}

    report = _run_items(runtime, "evolve", items, worker)
    if report.interrupted:
        return report
    runtime.state.mark_complete("evolve", {"steps": steps})
    report.details["pending_render"] = len(pending_unverified(runtime))
    return report


def stage_render_repair(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "synthesize")
    pending = pending_unverified(runtime)
    max_iters = int(runtime.config.get("thresholds", "repair_max_iters"))
    items = [(record.id, record) for record in pending]

    def worker(key, record, sink):
        output = runtime.state.images_dir / f"{record.id}.png"
        finished, result = repair_loop(
            record,
            runtime.synthesis_backend,
            runtime.renderer,
            max_iters,
            runtime.templates.get("self_repair"),
            str(output),
            runtime.limits,
            usage_sink=sink,
            params=runtime.params,
        )
        if finished.status != "executable":
            return {
                "outcome": "discarded",
                "record": finished.to_json(),
                "code_text": finished.code_text,
                "reason": f"still failing after {finished.repair_attempts} repairs",
            }
        return {
            "outcome": "executable",
            "record": finished.to_json(),
            "code_text": finished.code_text,
            "render": {
                "image": f"images/{record.id}.png",
                "width": result.width,
                "height": result.height,
                "axes_count": result.axes_count,
            },
        }

    report = _run_items(runtime, "render-repair", items, worker)
    if report.interrupted:
        return report
    report.details["pool_size"] = _save_pool_dir(runtime)
    runtime.state.mark_complete("render-repair")
    return report


def stage_validate_charts(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "render-repair")
    if pending_unverified(runtime):
        raise PrerequisiteError("unverified records remain; run render-repair again")
    pool, renders = build_pool(runtime)
    threshold = float(runtime.config.get("thresholds", "chart_score"))
    generated = sorted(pool.records_by(sources=("self_instruct", "evol_instruct")), key=lambda r: r.id)
    items = [(record.id, record) for record in generated]

    def worker(key, record, sink):
        image = renders[record.id].image_path
        try:
            mean, verdicts = rate_chart(
                image, runtime.ensemble, runtime.templates.get("rate_chart"), sink, runtime.params
            )
        except AllVerdictsUnparseableError:
            return {"outcome": "discarded", "kept": False, "reason": "all verdicts unparseable"}
        kept = filter_chart(mean, threshold)
        return {
            "outcome": "kept" if kept else "discarded",
            "kept": kept,
            "mean": mean,
            "verdicts": [{"model_id": v.model_id, "score": v.score} for v in verdicts],
        }

    report = _run_items(runtime, "validate-charts", items, worker)
    if report.interrupted:
        return report
    entries = runtime.state.journal("validate-charts").read()
    kept = sum(1 for e in entries.values() if e.get("kept"))
    report.details["kept_charts"] = kept
    runtime.state.mark_complete("validate-charts", {"kept": kept, "rated": len(entries)})
    return report


def _kept_chart_ids(runtime: PipelineRuntime) -> list[str]:
    entries = runtime.state.journal("validate-charts").read()
    return sorted(key for key, entry in entries.items() if entry.get("kept"))


def stage_genqa(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "validate-charts")
    pool, _ = build_pool(runtime)
    kept_ids = _kept_chart_ids(runtime)
    batches = {
        "recognition": int(runtime.config.get("counts", "question_batches_recognition")),
        "reasoning": int(runtime.config.get("counts", "question_batches_reasoning")),
    }
    threshold = float(runtime.config.get("thresholds", "dedup"))
    scope = runtime.config.get("sampling", "dedup_scope")
    items = [(chart_id, pool.get(chart_id)) for chart_id in kept_ids]

    # Global dedup folds over previously accepted questions, so ordering must
    # be the sorted chart order: run serially in that mode.
    serial = scope == "global"
    global_accepted: list[str] = []
    if serial:
        prior_entries = runtime.state.journal("genqa").read()
        for prior_key in sorted(prior_entries):
            global_accepted.extend(prior_entries[prior_key].get("kept_questions", []))

    def worker(key, record, sink):
        candidates: list[tuple[str, str]] = []
        discarded_batches = 0
        for orientation in ("recognition", "reasoning"):
            for _ in range(batches[orientation]):
                try:
                    questions = generate_questions(
                        record, orientation, runtime.synthesis_backend, runtime.templates, sink, runtime.params
                    )
                except MalformedReplyError:
                    discarded_batches += 1
                    continue
                candidates.extend((orientation, question) for question in questions)
        prior = list(global_accepted) if serial else []
        kept_questions = dedup_filter([q for _, q in candidates], prior, threshold)
        kept_set = set(kept_questions)
        kept_pairs = []
        seen: set[str] = set()
        for orientation, question in candidates:
            if question in kept_set and question not in seen:
                kept_pairs.append((orientation, question))
                seen.add(question)
        qa_records = []
        discarded_answers = 0
        for orientation, question in kept_pairs:
            try:
                body = generate_answer(
                    record, question, orientation, runtime.synthesis_backend, runtime.templates, sink, runtime.params
                )
            except MalformedReplyError:
                discarded_answers += 1
                continue
            qa_records.append(
                QARecord(
                    id=make_qa_id(record.id, orientation, question),
                    chart_id=record.id,
                    orientation=orientation,
                    question=question,
                    analysis=body["analysis"],
                    answer=body["answer"],
                    status="candidate",
                ).to_json()
            )
        if serial:
            global_accepted.extend(q for _, q in kept_pairs)
        return {
            "outcome": "generated",
            "qa": qa_records,
            "kept_questions": [q for _, q in kept_pairs],
            "candidates": len(candidates),
            "dropped_dedup": len(candidates) - len(kept_pairs),
            "discarded_batches": discarded_batches,
            "discarded_answers": discarded_answers,
        }

    report = _run_items(runtime, "genqa", items, worker, serial=serial)
    if report.interrupted:
        return report
    entries = runtime.state.journal("genqa").read()
    total_qa = sum(len(e.get("qa", [])) for e in entries.values())
    report.details["qa_candidates"] = total_qa
    runtime.state.mark_complete("genqa", {"qa_candidates": total_qa})
    return report


def _candidate_qa(runtime: PipelineRuntime) -> list[QARecord]:
    records = []
    entries = runtime.state.journal("genqa").read()
    for key in sorted(entries):
        for body in entries[key].get("qa", []):
            records.append(QARecord.from_json(body))
    return sorted(records, key=lambda r: r.id)


def stage_validate_qa(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "genqa")
    _, renders = build_pool(runtime)
    negative_votes = int(runtime.config.get("thresholds", "negative_votes"))
    qa_records = _candidate_qa(runtime)
    items = [(qa.id, qa) for qa in qa_records]

    def worker(key, qa, sink):
        image = renders[qa.chart_id].image_path
        verdicts = judge_qa(
            image, qa.question, qa.answer, runtime.ensemble,
            runtime.templates.get("judge_qa"), sink, runtime.params,
        )
        kept = filter_qa(verdicts, negative_votes)
        return {
            "outcome": "kept" if kept else "discarded",
            "kept": kept,
            "verdicts": [{"model_id": v.model_id, "decision": v.decision} for v in verdicts],
        }

    report = _run_items(runtime, "validate-qa", items, worker)
    if report.interrupted:
        return report
    entries = runtime.state.journal("validate-qa").read()
    kept = sum(1 for e in entries.values() if e.get("kept"))
    report.details["kept_qa"] = kept
    runtime.state.mark_complete("validate-qa", {"kept": kept, "judged": len(entries)})
    return report


def stage_package(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "validate-qa")
    pool, renders = build_pool(runtime)
    kept_ids = _kept_chart_ids(runtime)
    charts = [pool.get(chart_id) for chart_id in kept_ids]
    verdict_entries = runtime.state.journal("validate-qa").read()
    accepted = [
        QARecord.from_json({**qa.to_json(), "status": "accepted"})
        for qa in _candidate_qa(runtime)
        if verdict_entries.get(qa.id, {}).get("kept")
    ]
    cap = runtime.config.get("counts", "qa_per_chart_cap")
    if cap:
        taken: dict[tuple[str, str], int] = {}
        capped = []
        for qa in accepted:  # already sorted by id
            bucket = (qa.chart_id, qa.orientation)
            if taken.get(bucket, 0) < int(cap):
                taken[bucket] = taken.get(bucket, 0) + 1
                capped.append(qa)
        accepted = capped
    manifest = package(charts, renders, accepted, runtime.config.get("split"), runtime.state.dataset_dir)
    report = StageReport(stage="package", processed=len(manifest.charts) + len(manifest.qa))
    report.details.update({"charts": len(manifest.charts), "qa": len(manifest.qa)})
    runtime.state.mark_complete("package", {"charts": len(manifest.charts), "qa": len(manifest.qa)})
    return report


def stage_stats(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "package")
    manifest = load_manifest(runtime.state.dataset_dir)
    stats = compute_stats(manifest)
    block = render_stats_block(stats)
    (runtime.state.dataset_dir / "stats.txt").write_text(block, encoding="utf-8")
    report = StageReport(stage="stats", processed=1)
    report.details["stats"] = block
    runtime.state.mark_complete("stats")
    return report


def build_ledger(runtime: PipelineRuntime) -> CostLedger:
    price = PriceSheet(
        runtime.config.get("price_sheet", "input_usd_per_million"),
        runtime.config.get("price_sheet", "output_usd_per_million"),
    )
    ledger = CostLedger(price=price)
    for stage in ("seed-import", "synthesize", "evolve", "render-repair", "validate-charts",
                  "genqa", "validate-qa", "eval", "eval-errors"):
        for entry in runtime.state.journal(stage).read().values():
            for label, prompt_tokens, completion_tokens in entry.get("usages", []):
                ledger.record(label, Usage(prompt_tokens, completion_tokens))
    return ledger


def stage_cost_report(runtime: PipelineRuntime) -> StageReport:
    ledger = build_ledger(runtime)
    rendered = render_cost_report(report_cost(ledger))
    runtime.state.reports_dir.mkdir(parents=True, exist_ok=True)
    (runtime.state.reports_dir / "cost-report.txt").write_text(rendered, encoding="utf-8")
    report = StageReport(stage="cost-report", processed=1)
    report.details["report"] = rendered
    return report


def _eval_dataset_dir(runtime: PipelineRuntime) -> Path:
    configured = runtime.config.get("eval", "dataset_dir")
    if configured:
        return Path(configured)
    _require(runtime, "package")
    return runtime.state.dataset_dir


def stage_eval(runtime: PipelineRuntime) -> StageReport:
    dataset_dir = _eval_dataset_dir(runtime)
    manifest = load_manifest(dataset_dir)
    entries = sorted(manifest.qa, key=lambda e: e.id)
    max_items = runtime.config.get("eval", "max_items")
    if max_items:
        entries = entries[: int(max_items)]
    if not entries:
        raise StageError("dataset has no Q&A entries to evaluate")
    suffix = runtime.templates.get("cot_suffix")
    items = [(entry.id, entry) for entry in entries]

    def worker(key, entry, sink):
        prompt = build_cot_prompt(entry.question, suffix)
        image = str(dataset_dir / entry.image_path)
        conversation = [ChatMessage(role="user", text=prompt, image_refs=(image,))]
        reply, usage = runtime.candidate_backend.complete(conversation, runtime.params)
        sink("eval-candidate", usage)
        item = EvalItem(
            question=entry.question, answer=entry.answer, prediction=reply.text, image_ref=image
        )
        verdict = judge(item, runtime.judge_backend, runtime.templates.get("judge_correctness"), sink, runtime.params)
        return {
            "outcome": "correct" if verdict.correct else "incorrect",
            "prompt_digest": conversation_digest(conversation),
            "prediction": reply.text,
            "correct": verdict.correct,
            "parseable": verdict.parseable,
        }

    report = _run_items(runtime, "eval", items, worker)
    if report.interrupted:
        return report
    journal = runtime.state.journal("eval").read()
    results = [journal[key] for key in sorted(journal)]
    accuracy = relaxed_accuracy([JudgeResult(analysis="", correct=r["correct"]) for r in results])
    report.details["relaxed_accuracy"] = round(accuracy, 6)
    report.details["judged"] = len(results)
    _write_eval_results(runtime)
    runtime.state.mark_complete("eval", {"relaxed_accuracy": accuracy, "judged": len(results)})
    return report


def stage_eval_errors(runtime: PipelineRuntime) -> StageReport:
    _require(runtime, "eval")
    dataset_dir = _eval_dataset_dir(runtime)
    manifest = load_manifest(dataset_dir)
    by_id = {entry.id: entry for entry in manifest.qa}
    eval_entries = runtime.state.journal("eval").read()
    incorrect = [key for key in sorted(eval_entries) if not eval_entries[key]["correct"]]
    items = []
    for key in incorrect:
        entry = by_id.get(key)
        if entry is not None:
            items.append((key, (entry, eval_entries[key]["prediction"])))

    def worker(key, pair, sink):
        entry, prediction = pair
        item = EvalItem(question=entry.question, answer=entry.answer, prediction=prediction)
        category = classify_error(
            item, runtime.judge_backend, runtime.templates.get("classify_error"), sink, runtime.params
        )
        return {"outcome": "classified", "category": category}

    report = _run_items(runtime, "eval-errors", items, worker)
    if report.interrupted:
        return report
    entries = runtime.state.journal("eval-errors").read()
    breakdown = build_breakdown([entries[key]["category"] for key in sorted(entries)])
    report.details["counts"] = breakdown.counts
    report.details["fractions"] = {k: round(v, 6) for k, v in breakdown.fractions.items()}
    _write_eval_results(runtime)
    runtime.state.mark_complete("eval-errors", {"counts": breakdown.counts})
    return report


def _write_eval_results(runtime: PipelineRuntime) -> None:
    """Merged per-item results file: prompt digest, prediction, verdict, category."""
    eval_entries = runtime.state.journal("eval").read()
    categories = {k: v.get("category") for k, v in runtime.state.journal("eval-errors").read().items()}
    runtime.state.reports_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    for key in sorted(eval_entries):
        entry = eval_entries[key]
        lines.append(
            json.dumps(
                {
                    "id": key,
                    "prompt_digest": entry["prompt_digest"],
                    "prediction": entry["prediction"],
                    "correct": entry["correct"],
                    "category": categories.get(key),
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    (runtime.state.reports_dir / "eval-results.jsonl").write_text(
        "\n".join(lines) + ("\n" if lines else ""), encoding="utf-8"
    )


def stage_kappa(runtime: PipelineRuntime) -> StageReport:
    file_a = runtime.config.get("kappa", "file_a")
    file_b = runtime.config.get("kappa", "file_b")
    if not file_a or not file_b:
        raise ConfigError("kappa stage needs both annotation files", "kappa.file_a")
    a = load_annotations(file_a, "annotator-a")
    b = load_annotations(file_b, "annotator-b")
    kappa = cohen_kappa(a, b)
    report = StageReport(stage="kappa", processed=len(a))
    report.details["kappa"] = round(kappa, 6)
    return report


STAGE_RUNNERS = {
    "seed-import": stage_seed_import,
    "synthesize": stage_synthesize,
    "evolve": stage_evolve,
    "render-repair": stage_render_repair,
    "validate-charts": stage_validate_charts,
    "genqa": stage_genqa,
    "validate-qa": stage_validate_qa,
    "package": stage_package,
    "stats": stage_stats,
    "cost-report": stage_cost_report,
    "eval": stage_eval,
    "eval-errors": stage_eval_errors,
    "kappa": stage_kappa,
}

# Canonical order for `run-all`: chart rating precedes Q&A generation, so
# questions are only synthesized for charts that survived the rating gate.
RUN_ALL_ORDER = (
    "seed-import",
    "synthesize",
    "render-repair",
    "evolve",
    "render-repair",
    "validate-charts",
    "genqa",
    "validate-qa",
    "package",
    "stats",
    "cost-report",
)


def run_stage(stage: str, config: PipelineConfig) -> StageReport:
    if stage not in STAGE_RUNNERS:
        raise ConfigError(f"unknown stage {stage!r}; valid stages: {', '.join(STAGE_RUNNERS)}")
    runtime = PipelineRuntime(config)
    return STAGE_RUNNERS[stage](runtime)
