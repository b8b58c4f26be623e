"""Dataset packaging: layout classification, round-trip, statistics."""

from __future__ import annotations

from fractions import Fraction

import pytest

from chartsynth.errors import ManifestError
from chartsynth.packaging.manifest import classify_layout, load_manifest, package
from chartsynth.packaging.stats import compute_stats, render_stats_block
from chartsynth.qagen.generate import QARecord, make_qa_id
from chartsynth.render.stub import write_pattern_png
from chartsynth.render.types import RenderResult
from chartsynth.synthesis.records import CodeRecord
from chartsynth.taxonomy import ChartType

BAR = ChartType("Bar Charts", "bar chart")
LINE = ChartType("Line Charts", "line chart")


def _chart(i, source="self_instruct", direction=None, chart_type=BAR):
    complexity = "hard" if source == "evol_instruct" else "easy"
    return CodeRecord(
        id=f"chart{i:02d}",
        source=source,
        chart_type=chart_type,
        topics=("Business and Finance", "Art and Design"),
        complexity=complexity,
        code_text=f"plot({i})",
        status="executable",
        parent_id="parent" if source == "evol_instruct" else None,
        evolution_direction=direction,
    )


def _render(tmp_path, record, axes=1, width=640, height=480):
    image = tmp_path / "src_images" / f"{record.id}.png"
    image.parent.mkdir(parents=True, exist_ok=True)
    write_pattern_png(image, 8, 6, record.id.encode())
    return RenderResult(
        status="ok", image_path=str(image), width=width, height=height, axes_count=axes
    )


def _qa(chart_id, orientation, question):
    return QARecord(
        id=make_qa_id(chart_id, orientation, question),
        chart_id=chart_id,
        orientation=orientation,
        question=question,
        analysis="worked through the chart",
        answer=f"answer to {question}",
        status="accepted",
    )


class TestClassifyLayout:
    def test_direction_3_is_overlay(self):
        record = _chart(1, source="evol_instruct", direction=3)
        flags = classify_layout(record, RenderResult("ok", "x.png", 10, 10, axes_count=2))
        assert flags == {"is_overlay": True, "is_multiplot": False}

    def test_direction_4_is_multiplot(self):
        record = _chart(2, source="evol_instruct", direction=4)
        flags = classify_layout(record, RenderResult("ok", "x.png", 10, 10, axes_count=2))
        assert flags == {"is_overlay": False, "is_multiplot": True}

    def test_unevolved_single_axes_is_neither(self):
        flags = classify_layout(_chart(3), RenderResult("ok", "x.png", 10, 10, axes_count=1))
        assert flags == {"is_overlay": False, "is_multiplot": False}

    def test_organically_multi_axes_counts_as_multiplot(self):
        flags = classify_layout(_chart(4), RenderResult("ok", "x.png", 10, 10, axes_count=2))
        assert flags == {"is_overlay": False, "is_multiplot": True}


def _fixture(tmp_path):
    """Four charts, ten Q&A (6 reasoning, 4 recognition)."""
    charts = [
        _chart(0, chart_type=LINE),
        _chart(1),
        _chart(2, source="evol_instruct", direction=3),
        _chart(3, source="evol_instruct", direction=4),
    ]
    renders = {c.id: _render(tmp_path, c, axes=2 if c.evolution_direction else 1) for c in charts}
    qa = []
    for i in range(6):
        qa.append(_qa(charts[i % 4].id, "reasoning", f"reasoning question {i}?"))
    for i in range(4):
        qa.append(_qa(charts[i].id, "recognition", f"recognition question {i}?"))
    return charts, renders, qa


class TestPackage:
    def test_fixture_package_resolves_all_paths(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        assert len(manifest.charts) == 4
        assert len(manifest.qa) == 10
        for entry in manifest.charts:
            assert (tmp_path / "out" / entry.image_path).exists()
            assert (tmp_path / "out" / entry.code_path).exists()
        for entry in manifest.qa:
            assert (tmp_path / "out" / entry.image_path).exists()

    def test_empty_inputs_valid(self, tmp_path):
        manifest = package([], {}, [], "train", tmp_path / "out")
        assert manifest.charts == () and manifest.qa == ()
        assert load_manifest(tmp_path / "out") == manifest

    def test_dangling_qa_rejected(self, tmp_path):
        charts, renders, _ = _fixture(tmp_path)
        orphan = _qa("chart99", "reasoning", "about a ghost chart?")
        with pytest.raises(ManifestError):
            package(charts, renders, [orphan], "train", tmp_path / "out")

    def test_missing_image_rejected(self, tmp_path):
        chart = _chart(0)
        render = RenderResult("ok", str(tmp_path / "nope.png"), 10, 10, axes_count=1)
        with pytest.raises(ManifestError):
            package([chart], {chart.id: render}, [], "train", tmp_path / "out")

    def test_round_trip(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        assert load_manifest(tmp_path / "out") == manifest

    def test_byte_identical_across_runs(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        package(charts, renders, qa, "train", tmp_path / "one")
        package(list(reversed(charts)), renders, list(reversed(qa)), "train", tmp_path / "two")
        for name in ("manifest.jsonl", "qa.jsonl"):
            assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


class TestComputeStats:
    def test_empty_manifest_all_zero(self, tmp_path):
        manifest = package([], {}, [], "train", tmp_path / "out")
        stats = compute_stats(manifest)
        assert stats.total_charts == 0
        assert stats.unique_questions == 0
        assert stats.reco_per_chart == 0.0
        assert stats.avg_width == 0.0

    def test_fixture_per_chart_averages(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        stats = compute_stats(manifest)
        assert stats.total_charts == 4
        assert stats.reas_per_chart == pytest.approx(1.5)
        assert stats.reco_per_chart == pytest.approx(1.0)
        assert stats.overlay_count == 1
        assert stats.multiplot_count == 1
        assert stats.unique_questions == 10
        assert stats.majors_covered == 2
        assert stats.minors_covered == 2

    def test_rational_consistency(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        stats = compute_stats(manifest)
        assert stats.unique_questions == len(manifest.qa)
        assert Fraction(stats.reco_count, stats.total_charts) == Fraction(1, 1)
        assert Fraction(stats.reas_count, stats.total_charts) == Fraction(3, 2)

    def test_custom_tokenizer_is_used(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        stats = compute_stats(manifest, tokenizer=lambda text: 7, tokenizer_name="constant")
        assert stats.avg_reco_question_tokens == 7
        assert stats.tokenizer_name == "constant"
        assert "constant" in render_stats_block(stats)

    def test_render_block_stable(self, tmp_path):
        charts, renders, qa = _fixture(tmp_path)
        manifest = package(charts, renders, qa, "train", tmp_path / "out")
        stats = compute_stats(manifest)
        assert render_stats_block(stats) == render_stats_block(compute_stats(manifest))
