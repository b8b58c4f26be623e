"""Deterministic scripted synthesizer backend.

A drop-in chat backend for tests and replay-free desk runs: it recognizes
which prompt template produced the incoming conversation (the templates are
verbatim assets, so marker phrases are stable) and answers in persona. Every
reply is a pure function of the conversation digest plus this backend's
``model_id``, so distinct ensemble members disagree while the whole pipeline
stays bit-reproducible.

Fault injection: with ``failure_rate`` / ``permanent_rate`` > 0, freshly
synthesized scripts carry a fault that fails under both the stub renderer
(via the ``#FAIL:`` marker) and real execution (via an actual bad statement).
The repair persona fixes ordinary faults and refuses permanent ones.
"""

from __future__ import annotations

import hashlib
import json
import re

from .messages import ChatMessage, CompletionParams, Usage, check_conversation, conversation_digest
from .scripted_corpus import build_evolved_script, build_script

REPAIRABLE_FAULT = "#FAIL:NameError\n_undefined_probe\n"
PERMANENT_FAULT = "#FAIL:RuntimeError\nraise RuntimeError('unrepairable fault')\n"

_TYPE_MARKER = re.compile(r"^#TYPE:(.+)$", re.MULTILINE)
_TOPIC_MARKER = re.compile(r"^#TOPIC:(.+)$", re.MULTILINE)
_GROUPS_MARKER = re.compile(r"^#GROUPS:(\d+)$", re.MULTILINE)
_SEED_TYPE = re.compile(r"^#\s*chart-type:\s*(.+?)\s*$", re.MULTILINE)


def _between(text: str, start: str, end: str) -> str | None:
    lo = text.find(start)
    if lo == -1:
        return None
    lo += len(start)
    hi = text.find(end, lo)
    if hi == -1:
        return None
    return text[lo:hi].strip("\n")


def _first_line_match(pattern: re.Pattern, text: str, default: str) -> str:
    match = pattern.search(text)
    return match.group(1).strip() if match else default


class ScriptedBackend:
    def __init__(
        self,
        model_id: str = "scripted",
        failure_rate: float = 0.0,
        permanent_rate: float = 0.0,
    ):
        if not 0.0 <= failure_rate <= 1.0 or not 0.0 <= permanent_rate <= 1.0:
            raise ValueError("fault rates must be within [0, 1]")
        if failure_rate + permanent_rate > 1.0:
            raise ValueError("fault rates must sum to at most 1")
        self.model_id = model_id
        self.failure_rate = failure_rate
        self.permanent_rate = permanent_rate

    # -- entry point ---------------------------------------------------

    def complete(self, conversation, params: CompletionParams):
        check_conversation(conversation)
        digest = conversation_digest(conversation)
        text = self._respond(conversation, digest)
        prompt_tokens = sum(len(m.text.split()) + 25 * len(m.image_refs) for m in conversation)
        return (
            ChatMessage(role="assistant", text=text),
            Usage(prompt_tokens=prompt_tokens, completion_tokens=len(text.split())),
        )

    def _variant(self, digest: str, salt: str = "") -> int:
        payload = f"{digest}:{self.model_id}:{salt}".encode("utf-8")
        return int(hashlib.sha256(payload).hexdigest()[:8], 16)

    def _respond(self, conversation, digest: str) -> str:
        first = conversation[0].text
        last = conversation[-1].text
        if "write a new Python plotting script" in first:
            if len(conversation) == 1:
                return self._plan(digest)
            return self._self_instruct_final(first, digest)
        if "optimize a Python plotting script" in first:
            if len(conversation) == 1:
                return self._evol_ideas(digest)
            return self._evol_final(first, digest)
        if "you have been asked to fix the following code" in last:
            return self._repair(last)
        if "please generate 4 questions at a time" in last:
            recognition = "recognition-oriented question" in last
            return self._questions(last, digest, recognition)
        if "generate an answer to a given chart and question" in last:
            return self._answer(last, digest)
        if "Rate the chart from 1 to 5" in last:
            return self._rating(digest)
        if "determine if the answer is correct" in last:
            return self._qa_decision(digest)
        if "Compare the ground truth with the prediction" in last:
            return self._correctness(last)
        if "Classify the primary cause of the error" in last:
            return self._error_category(digest)
        if "Let's think step by step" in last:
            return self._candidate_answer(digest)
        return f"Acknowledged ({digest[:8]})."

    # -- synthesis personas --------------------------------------------

    def _plan(self, digest: str) -> str:
        v = self._variant(digest, "plan")
        return (
            f"Plan {digest[:8]}: the chart tells the story of project cohort {v % 90}. "
            "Title and axis labels follow the topic; the data uses explicit lists "
            "with modest, readable magnitudes."
        )

    def _inject_fault(self, script: str, digest: str) -> str:
        u = (self._variant(digest, "fault") % 10_000) / 10_000.0
        if u < self.permanent_rate:
            return PERMANENT_FAULT + script
        if u < self.permanent_rate + self.failure_rate:
            return REPAIRABLE_FAULT + script
        return script

    def _self_instruct_final(self, first: str, digest: str) -> str:
        minor = _between(first, "The type of chart you need to plot is ", ".") or "bar chart"
        topic = _between(first, "for example, ", ",") or "General Trends"
        script = build_script(minor, topic, self._variant(digest, "script"))
        script = self._inject_fault(script, digest)
        return f"Here is the final script.\n```python\n{script}```"

    def _evol_ideas(self, digest: str) -> str:
        return (
            f"Analysis {digest[:8]}: the original chart reads clearly; the optimization "
            "will extend the data while keeping labels legible, then re-balance the layout."
        )

    def _evol_final(self, first: str, digest: str) -> str:
        code = _between(first, "This is the code you need to optimize:", "Here's what I'd like you to do") or ""
        direction_text = _between(first, "Here's what I'd like you to do to optimize the chart: ", "\n") or ""
        if "overlay plot" in direction_text:
            direction_id = 3
        elif "additional subplot" in direction_text:
            direction_id = 4
        elif "visual elements" in direction_text:
            direction_id = 2
        else:
            direction_id = 1
        minor = _first_line_match(_TYPE_MARKER, code, "")
        if not minor:
            minor = _first_line_match(_SEED_TYPE, code, "bar chart")
        topic = _first_line_match(_TOPIC_MARKER, code, "General Trends")
        script = build_evolved_script(minor, topic, direction_id, self._variant(digest, "evolve"))
        script = self._inject_fault(script, digest)
        return f"Optimized as discussed.\n```python\n{script}```"

    def _repair(self, prompt: str) -> str:
        code = _between(prompt, "The error code is:", "The code reports the following error message") or ""
        if "unrepairable fault" in code:
            fixed = code  # persona gives up: returns the still-broken script
        else:
            kept = [
                line
                for line in code.split("\n")
                if not line.startswith("#FAIL:") and line.strip() != "_undefined_probe"
            ]
            fixed = "\n".join(kept)
        return f"The traceback points at an undefined name; removing it fixes the run.\n```python\n{fixed}\n```"

    # -- instruction personas ------------------------------------------

    def _questions(self, prompt: str, digest: str, recognition: bool) -> str:
        code = _between(prompt, "Here is the plotting script:", "Now, please generate 4 questions") or ""
        groups = _first_line_match(_GROUPS_MARKER, code, "3")
        v = self._variant(digest, "questions")
        if recognition:
            q1 = f"What label appears on slot {v % 6 + 1} of the chart?"
            questions = [
                q1,
                "How many data groups does the chart display?",
                f"Which color marks the series discussed in position {v % 4 + 1}?",
                # Near-duplicate of q1 on purpose: exercises the redundancy filter.
                f"What label appears on slot {v % 6 + 1} of this chart?",
            ]
        else:
            q1 = f"By how much does the largest value exceed the value at position {v % 5 + 1}?"
            questions = [
                q1,
                f"What is the combined total of the first {v % 3 + 2} values shown?",
                "Does the overall trend rise or fall across the chart, and by what ratio?",
                f"By how much does the largest value exceed the value in position {v % 5 + 1}?",
            ]
        items = ", ".join(f'"{q}"' for q in questions)
        # Prose around the object exercises the lenient parser.
        return f'Here are the questions (groups={groups}).\n{{"question_list": [{items}]}}'

    def _answer(self, prompt: str, digest: str) -> str:
        code = _between(prompt, "Here is the plotting script:", "Here are some tips") or ""
        question = _between(prompt, "Here is the question: ", "\n") or ""
        groups = _first_line_match(_GROUPS_MARKER, code, "3")
        v = self._variant(digest, "answer")
        if "how many data groups" in question.lower():
            final = groups
            steps = f"Counting the plotted groups one by one gives {groups}."
        else:
            final = str(v % 40 + 2)
            steps = (
                f"Reading the relevant marks gives {v % 9 + 1} and {v % 7 + 1}; "
                f"combining them step by step leads to {final}."
            )
        analysis = f"The script draws {groups} data groups; the question targets {question[:60]!r}."
        answer = f"{steps} The final answer is {final}."
        return (
            '{"analysis": ' + _json_str(analysis) + ', "answer": ' + _json_str(answer) + "}"
        )

    # -- validation personas -------------------------------------------

    def _rating(self, digest: str) -> str:
        v = self._variant(digest, "rating")
        score = 2 if v % 17 == 0 else 3 + v % 3
        return f"Analysis: composition and labelling check out at tier {v % 5}.\nRating: {score}"

    def _qa_decision(self, digest: str) -> str:
        v = self._variant(digest, "decision")
        decision = "no" if v % 11 == 0 else "yes"
        return f"Analysis: cross-checked the pair against the chart.\nDecision: {decision}"

    def _correctness(self, prompt: str) -> str:
        truth_raw = _between(prompt, "## Ground Truth: ", "\n") or ""
        prediction_raw = _between(prompt, "## Prediction: ", "\n") or ""
        truth = _final_answer(truth_raw) or _normalize(truth_raw)
        prediction = _final_answer(prediction_raw) or _normalize(prediction_raw)
        verdict = "Yes" if truth and truth == prediction else "No"
        return f"Analysis: compared the final answers only.\nCorrectness: {verdict}"

    def _error_category(self, digest: str) -> str:
        v = self._variant(digest, "classify") % 50
        if v < 31:
            category = "recognition error"
        elif v < 49:
            category = "reasoning error"
        else:
            category = "other error"
        return f"Analysis: traced where the prediction diverged.\nCategory: {category}"

    def _candidate_answer(self, digest: str) -> str:
        v = self._variant(digest, "candidate")
        return (
            f"Step 1: read the relevant marks. Step 2: combine them. "
            f"The final answer is {v % 40 + 2}."
        )


def _json_str(value: str) -> str:
    return json.dumps(value)


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9 ]", "", text.lower()).strip()


def _final_answer(text: str) -> str | None:
    match = re.search(r"final answer is ([^.\n]+)", text, re.IGNORECASE)
    return _normalize(match.group(1)) if match else None
