"""Model evaluation: zero-shot CoT prompting, judged correctness, error mix."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..gateway.messages import ChatMessage, CompletionParams
from ..prompts import PromptTemplate

EVAL_CANDIDATE_LABEL = "eval-candidate"
EVAL_JUDGE_LABEL = "eval-judge"
ERROR_CLASSIFY_LABEL = "error-classify"

ERROR_CATEGORIES = ("recognition_error", "reasoning_error", "other")

_CORRECTNESS_LINE = re.compile(r"correctness\s*:\s*\(?\s*(yes|no)\b", re.IGNORECASE)
_CATEGORY_LINE = re.compile(r"category\s*:\s*\(?\s*(recognition|reasoning|other)", re.IGNORECASE)


@dataclass(frozen=True)
class EvalItem:
    question: str
    answer: str
    prediction: str
    image_ref: str | None = None


@dataclass(frozen=True)
class JudgeResult:
    analysis: str
    correct: bool
    parseable: bool = True


def build_cot_prompt(question: str, suffix_template: PromptTemplate) -> str:
    if not question.strip():
        raise ValueError("question must be non-empty")
    return f"{question}\n{suffix_template.text}"


def judge(
    item: EvalItem,
    judge_backend,
    template: PromptTemplate,
    usage_sink=None,
    params: CompletionParams | None = None,
) -> JudgeResult:
    """Yes/no verdict from the last ``Correctness:`` line; an unparseable reply
    counts as incorrect and is flagged."""
    if not (item.question and item.answer and item.prediction):
        raise ValueError("judged items need question, ground truth, and prediction")
    prompt = template.fill(question=item.question, answer=item.answer, prediction=item.prediction)
    reply, usage = judge_backend.complete(
        [ChatMessage(role="user", text=prompt)], params or CompletionParams()
    )
    if usage_sink is not None:
        usage_sink(EVAL_JUDGE_LABEL, usage)
    hit = None
    for line in reply.text.split("\n"):
        match = _CORRECTNESS_LINE.search(line)
        if match:
            hit = match.group(1).lower()
    if hit is None:
        return JudgeResult(analysis=reply.text, correct=False, parseable=False)
    return JudgeResult(analysis=reply.text, correct=hit == "yes")


def relaxed_accuracy(results) -> float:
    results = list(results)
    if not results:
        raise ValueError("relaxed_accuracy needs at least one result")
    return sum(1 for r in results if r.correct) / len(results)


def classify_error(
    item: EvalItem,
    judge_backend,
    template: PromptTemplate,
    usage_sink=None,
    params: CompletionParams | None = None,
) -> str:
    """Three-way error category for an item already judged incorrect;
    unparseable replies fall into ``other``."""
    prompt = template.fill(question=item.question, answer=item.answer, prediction=item.prediction)
    reply, usage = judge_backend.complete(
        [ChatMessage(role="user", text=prompt)], params or CompletionParams()
    )
    if usage_sink is not None:
        usage_sink(ERROR_CLASSIFY_LABEL, usage)
    hit = None
    for line in reply.text.split("\n"):
        match = _CATEGORY_LINE.search(line)
        if match:
            hit = match.group(1).lower()
    if hit == "recognition":
        return "recognition_error"
    if hit == "reasoning":
        return "reasoning_error"
    return "other"


@dataclass(frozen=True)
class ErrorBreakdown:
    counts: dict[str, int]
    fractions: dict[str, float]


def build_breakdown(categories) -> ErrorBreakdown:
    """Counts and fractions per category; empty input yields an empty
    breakdown with no division."""
    categories = list(categories)
    counts = {category: 0 for category in ERROR_CATEGORIES}
    for category in categories:
        if category not in counts:
            raise ValueError(f"unknown error category {category!r}")
        counts[category] += 1
    if not categories:
        return ErrorBreakdown(counts=counts, fractions={})
    total = len(categories)
    fractions = {category: counts[category] / total for category in ERROR_CATEGORIES}
    return ErrorBreakdown(counts=counts, fractions=fractions)
