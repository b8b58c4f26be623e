"""Acceptance suite.

Each test enforces one release criterion at its stated tolerance and prints a
single ``[criterion N] PASS/FAIL`` line (visible with ``pytest -s`` or in the
captured output of a failing run). Runtime bounds are asserted, not assumed.
"""

from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from chartsynth.evaluation.harness import (
    EvalItem,
    JudgeResult,
    build_breakdown,
    classify_error,
    judge,
    relaxed_accuracy,
)
from chartsynth.gateway.ledger import (
    CostLedger,
    PriceSheet,
    estimate_cost,
    record_usage,
    report_cost,
)
from chartsynth.gateway.messages import Usage
from chartsynth.gateway.scripted import PERMANENT_FAULT, REPAIRABLE_FAULT, ScriptedBackend
from chartsynth.packaging.manifest import load_manifest, package
from chartsynth.packaging.stats import compute_stats
from chartsynth.pipeline.config import validate_structure
from chartsynth.pipeline.stages import RUN_ALL_ORDER, PipelineRuntime, build_pool, run_stage
from chartsynth.qagen.generate import QARecord, make_qa_id
from chartsynth.qagen.rouge import rouge_l, tokenize
from chartsynth.quality.ensemble import filter_chart, filter_qa
from chartsynth.quality.kappa import AnnotationRecord, cohen_kappa
from chartsynth.quality.verdicts import QAVerdict
from chartsynth.render.repair import repair_loop, repair_statistics
from chartsynth.render.stub import StubRenderer
from chartsynth.synthesis.records import CodeRecord
from chartsynth.taxonomy import ChartType
from tests.conftest import StaticBackend, no_usage


@contextmanager
def criterion(number: int, description: str, budget_s: float):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL - {description}")
        raise
    elapsed = time.monotonic() - started
    assert elapsed < budget_s, f"criterion {number} took {elapsed:.1f}s, budget {budget_s}s"
    print(f"[criterion {number}] PASS - {description} ({elapsed:.2f}s)")


PRICES = PriceSheet(Decimal("2.50"), Decimal("10.00"))

# (step, avg_in, avg_out, times, expected_cost)
COST_ROWS = (
    ("self-instruct", 3500, 1000, 3000, Decimal("56.25")),
    ("evol-instruct", 2000, 1000, 3000, Decimal("45.00")),
    ("self-repair", 500, 500, 1500, Decimal("9.38")),
    ("reas-qa-gen", 7000, 1700, 3249, Decimal("112.09")),
    ("reco-qa-gen", 5600, 1100, 3249, Decimal("81.23")),
)


def test_criterion_1_cost_model_exactness():
    with criterion(1, "cost model reproduces the published five-step table to the cent", 1.0):
        estimates = [estimate_cost(i, o, t, PRICES) for _, i, o, t, _ in COST_ROWS]
        assert estimates == [row[4] for row in COST_ROWS]
        assert sum(estimates) == Decimal("303.95")

        # Same arithmetic through the ledger/report path.
        ledger = CostLedger(price=PRICES)
        for step, avg_in, avg_out, times, _ in COST_ROWS:
            record_usage(ledger, step, Usage(avg_in * times, avg_out * times))
        report = report_cost(ledger)
        for step, _, _, _, expected in COST_ROWS:
            assert report.cost_of(step) == expected
        assert report.total == Decimal("303.95")


def _oracle_lcs(a: tuple, b: tuple) -> int:
    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(a) or j == len(b):
            return 0
        if a[i] == b[j]:
            return 1 + go(i + 1, j + 1)
        return max(go(i + 1, j), go(i, j + 1))

    return go(0, 0)


def _oracle_rouge(a: str, b: str) -> float:
    ta, tb = tuple(tokenize(a)), tuple(tokenize(b))
    lcs = _oracle_lcs(ta, tb)
    p = lcs / len(ta) if ta else 0.0
    r = lcs / len(tb) if tb else 0.0
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def test_criterion_2_rouge_oracle_equivalence():
    with criterion(2, "rouge_l equals the brute-force LCS oracle on 1,000 random pairs", 10.0):
        rng = random.Random(20240601)

        def sentence():
            return " ".join(f"w{rng.randrange(5)}" for _ in range(rng.randrange(13)))

        for _ in range(1000):
            a, b = sentence(), sentence()
            score = rouge_l(a, b)
            assert score == _oracle_rouge(a, b)
            assert score == rouge_l(b, a)
            assert 0.0 <= score <= 1.0


def _verdicts(decisions):
    return [QAVerdict(model_id=f"m{i}", decision=d, analysis="") for i, d in enumerate(decisions)]


def test_criterion_3_vote_filters_match_brute_force():
    with criterion(3, "vote filters match brute-force predicates and stay monotone", 5.0):
        for size in range(1, 6):
            for decisions in itertools.product(["yes", "no"], repeat=size):
                expected = decisions.count("no") < 2
                assert filter_qa(_verdicts(decisions)) == expected
                # Single-flip monotonicity: no -> yes never flips keep to discard.
                for index in range(size):
                    if decisions[index] == "no":
                        flipped = list(decisions)
                        flipped[index] = "yes"
                        assert not (
                            filter_qa(_verdicts(decisions)) and not filter_qa(_verdicts(flipped))
                        )

        grid = [round(1.0 + 0.01 * i, 2) for i in range(401)]
        for threshold in grid:
            for mean in grid:
                assert filter_chart(mean, threshold) == (mean >= threshold)


def test_criterion_4_kappa_worked_example():
    with criterion(4, "Cohen's kappa: worked 2x2 example and identity annotations", 1.0):
        labels_a = ["yes"] * 20 + ["yes"] * 5 + ["no"] * 10 + ["no"] * 15
        labels_b = ["yes"] * 20 + ["no"] * 5 + ["yes"] * 10 + ["no"] * 15
        a = [AnnotationRecord(f"i{n}", "a", label) for n, label in enumerate(labels_a)]
        b = [AnnotationRecord(f"i{n}", "b", label) for n, label in enumerate(labels_b)]
        assert cohen_kappa(a, b) == pytest.approx(0.4, abs=1e-9)

        identical = [AnnotationRecord(f"i{n}", "b", label) for n, label in enumerate(labels_a)]
        assert cohen_kappa(a, identical) == 1.0


class _CountingStub:
    def __init__(self):
        self.inner = StubRenderer()
        self.max_renders_per_record = 0
        self._current = 0

    def start_record(self):
        self._current = 0

    def render(self, request):
        self._current += 1
        self.max_renders_per_record = max(self.max_renders_per_record, self._current)
        return self.inner.render(request)


def test_criterion_5_self_repair_statistics(tmp_path, templates):
    with criterion(5, "repair statistics match the 15% fixed / 5% unrepairable profile", 30.0):
        rng = random.Random(77)
        chart_type = ChartType("Bar Charts", "bar chart")
        records = []
        for i in range(400):
            u = rng.random()
            base = f"print({i})\n"
            if u < 0.05:
                code = PERMANENT_FAULT + base
            elif u < 0.20:
                code = REPAIRABLE_FAULT + base
            else:
                code = base
            records.append(
                CodeRecord(
                    id=f"r{i:04d}", source="self_instruct", chart_type=chart_type,
                    topics=(), complexity="easy", code_text=code, status="unverified",
                )
            )

        backend = ScriptedBackend(model_id="repairer")
        renderer = _CountingStub()
        max_iters = 3
        finished = []
        for record in records:
            renderer.start_record()
            done, _ = repair_loop(
                record, backend, renderer, max_iters,
                templates.get("self_repair"), str(tmp_path / "img.png"),
            )
            finished.append(done)

        assert renderer.max_renders_per_record <= max_iters + 1
        assert all(r.repair_attempts <= max_iters for r in finished)
        stats = repair_statistics(finished)
        assert stats["fixed_fraction"] == pytest.approx(0.15, abs=0.03)
        assert stats["discarded_fraction"] == pytest.approx(0.05, abs=0.02)


def _demo_config(state_dir: Path):
    return validate_structure(
        {
            "state_dir": str(state_dir),
            "seed": 7,
            "backends": {
                "synthesis": {
                    "kind": "scripted", "model_id": "scripted-synth",
                    "failure_rate": 0.15, "permanent_rate": 0.05,
                },
                "ensemble": [
                    {"kind": "scripted", "model_id": "rater-a"},
                    {"kind": "scripted", "model_id": "rater-b"},
                    {"kind": "scripted", "model_id": "rater-c"},
                ],
                "judge": {"kind": "scripted", "model_id": "judge"},
                "candidate": {"kind": "scripted", "model_id": "candidate"},
            },
            "counts": {
                "self_instruct_steps": 20,
                "evol_instruct_steps": 10,
                "question_batches_recognition": 1,
                "question_batches_reasoning": 1,
            },
            "renderer": {"kind": "stub"},
        }
    )


def test_criterion_6_end_to_end_determinism(tmp_path):
    with criterion(6, "demo profile run twice with seed 7 is byte-identical end to end", 300.0):
        artifacts = {}
        for run_name in ("one", "two"):
            config = _demo_config(tmp_path / run_name)
            for stage in RUN_ALL_ORDER:
                run_stage(stage, config)
            state = Path(config.state_dir)
            artifacts[run_name] = {
                "manifest": (state / "dataset" / "manifest.jsonl").read_bytes(),
                "qa": (state / "dataset" / "qa.jsonl").read_bytes(),
                "stats": (state / "dataset" / "stats.txt").read_bytes(),
                "cost": (state / "reports" / "cost-report.txt").read_bytes(),
            }
        assert artifacts["one"] == artifacts["two"]

        config = _demo_config(tmp_path / "one")
        runtime = PipelineRuntime(config)
        pool, _ = build_pool(runtime)
        manifest = load_manifest(runtime.state.dataset_dir)
        assert len(manifest.charts) > 0 and len(manifest.qa) > 0

        # Every packaged chart is an executable pool member.
        for entry in manifest.charts:
            assert pool.get(entry.id).status == "executable"

        # Dedup postcondition: packaged questions of one chart stay pairwise
        # below the threshold.
        threshold = 0.7
        by_chart: dict[str, list[str]] = {}
        for qa_entry in manifest.qa:
            by_chart.setdefault(qa_entry.chart_id, []).append(qa_entry.question)
        for questions in by_chart.values():
            for i, a in enumerate(questions):
                for b in questions[:i]:
                    assert rouge_l(a, b) < threshold


def test_criterion_7_eval_harness_fixtures(templates):
    with criterion(7, "relaxed accuracy 13/20 = 0.65 and error mix 62/36/2", 5.0):
        item = EvalItem(question="Q?", answer="12", prediction="final answer is 12")
        replies = ["Correctness: Yes"] * 13 + ["Correctness: No"] * 7
        results = [
            judge(item, StaticBackend([reply]), templates.get("judge_correctness"), no_usage)
            for reply in replies
        ]
        assert relaxed_accuracy(results) == 0.65

        labels = (
            ["Category: recognition error"] * 31
            + ["Category: reasoning error"] * 18
            + ["Category: other error"] * 1
        )
        categories = [
            classify_error(item, StaticBackend([label]), templates.get("classify_error"), no_usage)
            for label in labels
        ]
        breakdown = build_breakdown(categories)
        assert breakdown.fractions["recognition_error"] == pytest.approx(0.62)
        assert breakdown.fractions["reasoning_error"] == pytest.approx(0.36)
        assert breakdown.fractions["other"] == pytest.approx(0.02)
        assert sum(breakdown.fractions.values()) == pytest.approx(1.0, abs=1e-12)

        assert relaxed_accuracy([JudgeResult("", True)] * 3 + [JudgeResult("", False)]) == 0.75


def test_criterion_8_stats_consistency(tmp_path):
    with criterion(8, "4-chart/10-qa fixture: reas 1.5, reco 1.0, manifest round-trips", 1.0):
        renderer = StubRenderer()
        charts, renders, qa = [], {}, []
        types = [
            ChartType("Line Charts", "line chart"),
            ChartType("Bar Charts", "bar chart"),
            ChartType("Pie Charts", "pie chart"),
            ChartType("Area Charts", "area chart"),
        ]
        for i in range(4):
            record = CodeRecord(
                id=f"chart{i:02d}", source="self_instruct", chart_type=types[i],
                topics=("Art and Design", "History and Culture"), complexity="easy",
                code_text=f"plot({i})", status="executable",
            )
            from chartsynth.render.types import RenderRequest

            result = renderer.render(
                RenderRequest(code_text=record.code_text, output_path=str(tmp_path / f"{record.id}.png"))
            )
            charts.append(record)
            renders[record.id] = result
        for i in range(6):
            question = f"reasoning question number {i}?"
            qa.append(QARecord(
                id=make_qa_id(charts[i % 4].id, "reasoning", question), chart_id=charts[i % 4].id,
                orientation="reasoning", question=question, analysis="a", answer="b",
                status="accepted",
            ))
        for i in range(4):
            question = f"recognition question number {i}?"
            qa.append(QARecord(
                id=make_qa_id(charts[i].id, "recognition", question), chart_id=charts[i].id,
                orientation="recognition", question=question, analysis="a", answer="b",
                status="accepted",
            ))

        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        stats = compute_stats(manifest)
        assert stats.reas_per_chart == 1.5
        assert stats.reco_per_chart == 1.0
        assert Fraction(stats.reas_count, stats.total_charts) == Fraction(3, 2)
        assert load_manifest(tmp_path / "out") == manifest
