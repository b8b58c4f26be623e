"""Evaluation harness: CoT prompt, judging, accuracy, error breakdown."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chartsynth.evaluation.harness import (
    ERROR_CATEGORIES,
    EvalItem,
    JudgeResult,
    build_breakdown,
    build_cot_prompt,
    classify_error,
    judge,
    relaxed_accuracy,
)
from tests.conftest import StaticBackend, no_usage

ITEM = EvalItem(question="What is the peak?", answer="12", prediction="The peak is 12.")


class TestCotPrompt:
    def test_exact_suffix(self, templates):
        assert build_cot_prompt("Q?", templates.get("cot_suffix")) == "Q?\nLet's think step by step."

    def test_empty_question_rejected(self, templates):
        with pytest.raises(ValueError):
            build_cot_prompt("   ", templates.get("cot_suffix"))

    def test_suffix_appears_exactly_once(self, templates):
        prompt = build_cot_prompt("Why?", templates.get("cot_suffix"))
        assert prompt.count("Let's think step by step.") == 1


class TestJudge:
    def _judge(self, reply, templates):
        return judge(ITEM, StaticBackend([reply]), templates.get("judge_correctness"), no_usage)

    def test_yes(self, templates):
        result = self._judge("Analysis: match\nCorrectness: Yes", templates)
        assert result.correct and result.parseable

    def test_lowercase_no(self, templates):
        result = self._judge("correctness: NO", templates)
        assert not result.correct and result.parseable

    def test_garbled_counts_incorrect_and_flagged(self, templates):
        result = self._judge("I cannot decide", templates)
        assert not result.correct and not result.parseable

    def test_incomplete_item_rejected(self, templates):
        with pytest.raises(ValueError):
            judge(
                EvalItem(question="q", answer="", prediction="p"),
                StaticBackend(["Correctness: Yes"]),
                templates.get("judge_correctness"),
                no_usage,
            )


class TestRelaxedAccuracy:
    def test_three_of_four(self):
        results = [JudgeResult("", True)] * 3 + [JudgeResult("", False)]
        assert relaxed_accuracy(results) == 0.75

    def test_all_correct(self):
        assert relaxed_accuracy([JudgeResult("", True)] * 5) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            relaxed_accuracy([])

    @given(st.lists(st.booleans(), min_size=1, max_size=50))
    def test_bounds_and_reorder_invariance(self, verdicts):
        results = [JudgeResult("", v) for v in verdicts]
        accuracy = relaxed_accuracy(results)
        assert 0.0 <= accuracy <= 1.0
        assert accuracy == relaxed_accuracy(list(reversed(results)))


class TestClassifyError:
    def _classify(self, reply, templates):
        return classify_error(ITEM, StaticBackend([reply]), templates.get("classify_error"), no_usage)

    def test_recognition(self, templates):
        assert self._classify("Category: recognition error", templates) == "recognition_error"

    def test_reasoning(self, templates):
        assert self._classify("Analysis: bad math\nCategory: reasoning error", templates) == "reasoning_error"

    def test_unparseable_falls_to_other(self, templates):
        assert self._classify("shrug", templates) == "other"


class TestBreakdown:
    def test_counts_and_fractions(self):
        categories = ["recognition_error"] * 31 + ["reasoning_error"] * 18 + ["other"]
        breakdown = build_breakdown(categories)
        assert breakdown.counts == {"recognition_error": 31, "reasoning_error": 18, "other": 1}
        assert breakdown.fractions["recognition_error"] == pytest.approx(0.62)
        assert breakdown.fractions["reasoning_error"] == pytest.approx(0.36)
        assert breakdown.fractions["other"] == pytest.approx(0.02)

    def test_zero_incorrect_items(self):
        breakdown = build_breakdown([])
        assert breakdown.fractions == {}
        assert all(count == 0 for count in breakdown.counts.values())

    @given(st.lists(st.sampled_from(ERROR_CATEGORIES), min_size=1, max_size=200))
    def test_fractions_sum_to_one(self, categories):
        breakdown = build_breakdown(categories)
        assert sum(breakdown.fractions.values()) == pytest.approx(1.0, abs=1e-12)

    def test_unknown_category_rejected(self):
        with pytest.raises(ValueError):
            build_breakdown(["typo_error"])
