"""Two-step Q&A generation: question batches first, answers per question."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..errors import MalformedReplyError
from ..gateway.messages import ChatMessage, CompletionParams
from ..prompts import PromptLibrary
from ..synthesis.records import CodeRecord

ORIENTATIONS = ("recognition", "reasoning")
QA_STATUSES = ("candidate", "accepted", "discarded")

QA_STEP_LABELS = {"recognition": "reco-qa-gen", "reasoning": "reas-qa-gen"}


@dataclass
class QARecord:
    id: str
    chart_id: str
    orientation: str
    question: str
    analysis: str
    answer: str
    status: str = "candidate"

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"invalid orientation {self.orientation!r}")
        if self.status not in QA_STATUSES:
            raise ValueError(f"invalid status {self.status!r}")
        if self.status == "accepted" and (not self.question or not self.answer):
            raise ValueError("accepted records need a question and an answer")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "chart_id": self.chart_id,
            "orientation": self.orientation,
            "question": self.question,
            "analysis": self.analysis,
            "answer": self.answer,
            "status": self.status,
        }

    @classmethod
    def from_json(cls, body: dict) -> "QARecord":
        return cls(**{k: body[k] for k in ("id", "chart_id", "orientation", "question", "analysis", "answer", "status")})


def make_qa_id(chart_id: str, orientation: str, question: str) -> str:
    payload = f"{chart_id}:{orientation}:{question}".encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]


def extract_json_object(text: str) -> dict:
    """Lenient parse: the outermost ``{...}`` span, tolerating prose around it."""
    start = text.find("{")
    end = text.rfind("}")
    if start == -1 or end == -1 or end <= start:
        raise MalformedReplyError("reply contains no JSON object")
    try:
        body = json.loads(text[start : end + 1])
    except json.JSONDecodeError as exc:
        raise MalformedReplyError(f"reply JSON does not parse: {exc}") from exc
    if not isinstance(body, dict):
        raise MalformedReplyError("reply JSON is not an object")
    return body


def _questions_from_reply(text: str) -> list[str]:
    body = extract_json_object(text)
    questions = body.get("question_list")
    if not isinstance(questions, list) or not questions:
        raise MalformedReplyError("reply lacks a non-empty 'question_list'")
    if not all(isinstance(q, str) and q.strip() for q in questions):
        raise MalformedReplyError("'question_list' must hold non-empty strings")
    return [q.strip() for q in questions]


def _answer_from_reply(text: str) -> dict[str, str]:
    body = extract_json_object(text)
    analysis = body.get("analysis")
    answer = body.get("answer")
    if not isinstance(analysis, str) or not analysis.strip():
        raise MalformedReplyError("reply lacks a non-empty 'analysis'")
    if not isinstance(answer, str) or not answer.strip():
        raise MalformedReplyError("reply lacks a non-empty 'answer'")
    return {"analysis": analysis.strip(), "answer": answer.strip()}


def _ask_with_retry(backend, prompt: str, params: CompletionParams, usage_sink, label: str, parse):
    conversation = [ChatMessage(role="user", text=prompt)]
    last_error: MalformedReplyError | None = None
    for _ in range(2):  # one re-ask on malformed replies
        reply, usage = backend.complete(conversation, params)
        usage_sink(label, usage)
        try:
            return parse(reply.text)
        except MalformedReplyError as exc:
            last_error = exc
    raise last_error


def generate_questions(
    record: CodeRecord,
    orientation: str,
    backend,
    templates: PromptLibrary,
    usage_sink,
    params: CompletionParams | None = None,
) -> list[str]:
    if record.status != "executable":
        raise ValueError("questions are only generated for executable records")
    if orientation not in ORIENTATIONS:
        raise ValueError(f"invalid orientation {orientation!r}")
    prompt = templates.get(f"question_{orientation}").fill(code=record.code_text)
    label = QA_STEP_LABELS[orientation]
    return _ask_with_retry(
        backend, prompt, params or CompletionParams(), usage_sink, label, _questions_from_reply
    )


def generate_answer(
    record: CodeRecord,
    question: str,
    orientation: str,
    backend,
    templates: PromptLibrary,
    usage_sink,
    params: CompletionParams | None = None,
) -> dict[str, str]:
    if not question.strip():
        raise ValueError("question must be non-empty")
    if orientation not in ORIENTATIONS:
        raise ValueError(f"invalid orientation {orientation!r}")
    prompt = templates.get(f"answer_{orientation}").fill(code=record.code_text, question=question)
    label = QA_STEP_LABELS[orientation]
    return _ask_with_retry(
        backend, prompt, params or CompletionParams(), usage_sink, label, _answer_from_reply
    )
