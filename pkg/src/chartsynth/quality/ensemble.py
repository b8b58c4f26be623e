"""Ensemble validation: averaged chart scores and yes/no Q&A votes.

The two gates deliberately treat unparseable replies differently: a chart
score is an estimate, so a garbled rating is excluded from the mean, while a
Q&A verdict is a safety gate, so a garbled reply counts as a "no".
"""

from __future__ import annotations

from ..errors import AllVerdictsUnparseableError, UnparseableVerdictError
from ..gateway.messages import ChatMessage, CompletionParams
from ..prompts import PromptTemplate
from .verdicts import ChartVerdict, QAVerdict, parse_decision, parse_rating

CHART_RATING_LABEL = "chart-rating"
QA_RATING_LABEL = "qa-rating"


def rate_chart(
    image_path: str,
    ensemble,
    template: PromptTemplate,
    usage_sink=None,
    params: CompletionParams | None = None,
) -> tuple[float, list[ChartVerdict]]:
    """Mean 1..5 score over the ensemble, unparseable members excluded."""
    if not ensemble:
        raise ValueError("ensemble must not be empty")
    params = params or CompletionParams()
    message = ChatMessage(role="user", text=template.text, image_refs=(image_path,))
    verdicts: list[ChartVerdict] = []
    unparseable = 0
    for member in ensemble:
        reply, usage = member.complete([message], params)
        if usage_sink is not None:
            usage_sink(CHART_RATING_LABEL, usage)
        try:
            parsed = parse_rating(reply.text)
        except UnparseableVerdictError:
            unparseable += 1
            continue
        verdicts.append(
            ChartVerdict(model_id=member.model_id, score=parsed["score"], analysis=parsed["analysis"])
        )
    if not verdicts:
        raise AllVerdictsUnparseableError(
            f"all {unparseable} ensemble members returned unparseable ratings"
        )
    mean = sum(v.score for v in verdicts) / len(verdicts)
    return mean, verdicts


def filter_chart(mean: float, threshold: float) -> bool:
    """Keep iff the mean score reaches the threshold."""
    if not 1.0 <= threshold <= 5.0:
        raise ValueError("chart threshold must be within [1, 5]")
    return mean >= threshold


def judge_qa(
    image_path: str,
    question: str,
    answer: str,
    ensemble,
    template: PromptTemplate,
    usage_sink=None,
    params: CompletionParams | None = None,
) -> list[QAVerdict]:
    """One yes/no verdict per ensemble member; unparseable replies become
    conservative "no" votes."""
    if not ensemble:
        raise ValueError("ensemble must not be empty")
    params = params or CompletionParams()
    prompt = template.fill(question=question, answer=answer)
    message = ChatMessage(role="user", text=prompt, image_refs=(image_path,))
    verdicts: list[QAVerdict] = []
    for member in ensemble:
        reply, usage = member.complete([message], params)
        if usage_sink is not None:
            usage_sink(QA_RATING_LABEL, usage)
        decision = parse_decision(reply.text) or "no"
        verdicts.append(QAVerdict(model_id=member.model_id, decision=decision, analysis=reply.text))
    return verdicts


def filter_qa(verdicts, negative_votes: int = 2) -> bool:
    """Keep unless the sample collected ``negative_votes`` or more "no" votes."""
    verdicts = list(verdicts)
    if not verdicts:
        raise ValueError("filter_qa needs at least one verdict")
    if negative_votes < 1:
        raise ValueError("negative_votes must be >= 1")
    negatives = sum(1 for v in verdicts if v.decision == "no")
    return negatives < negative_votes
