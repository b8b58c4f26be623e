"""Verdict types and reply parsing for the validation ensemble."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import UnparseableVerdictError

_RATING_LINE = re.compile(r"rating\s*:\s*\(?\s*(-?\d+)", re.IGNORECASE)
_DECISION_LINE = re.compile(r"decision\s*:\s*\(?\s*(yes|no)\b", re.IGNORECASE)
_ANALYSIS_PREFIX = re.compile(r"^\s*analysis\s*:\s*", re.IGNORECASE)


@dataclass(frozen=True)
class ChartVerdict:
    model_id: str
    score: int
    analysis: str

    def __post_init__(self):
        if not 1 <= self.score <= 5:
            raise ValueError(f"score {self.score} outside 1..5")


@dataclass(frozen=True)
class QAVerdict:
    model_id: str
    decision: str
    analysis: str

    def __post_init__(self):
        if self.decision not in ("yes", "no"):
            raise ValueError(f"decision must be yes/no, got {self.decision!r}")


def _split_analysis(text: str, marker_line_index: int) -> str:
    lines = text.split("\n")
    analysis = "\n".join(lines[:marker_line_index]).strip()
    return _ANALYSIS_PREFIX.sub("", analysis, count=1).strip()


def parse_rating(reply_text: str) -> dict:
    """Parse ``{analysis, score}`` from a rating reply.

    The score comes from the last line carrying ``Rating: <int>`` (case
    insensitive); integers outside 1..5 are rejected rather than clamped.
    """
    lines = reply_text.split("\n")
    hit = None
    for index, line in enumerate(lines):
        match = _RATING_LINE.search(line)
        if match:
            hit = (index, int(match.group(1)))
    if hit is None:
        raise UnparseableVerdictError("no 'Rating:' line found")
    index, score = hit
    if not 1 <= score <= 5:
        raise UnparseableVerdictError(f"rating {score} outside 1..5")
    return {"analysis": _split_analysis(reply_text, index), "score": score}


def format_rating(analysis: str, score: int) -> str:
    return f"Analysis: {analysis}\nRating: {score}"


def parse_decision(reply_text: str) -> str | None:
    """Yes/no from the last ``Decision:`` line; None when unparseable."""
    hit = None
    for line in reply_text.split("\n"):
        match = _DECISION_LINE.search(line)
        if match:
            hit = match.group(1).lower()
    return hit
