"""Prompt template assets: loading, content addressing, placeholder filling.

Templates live as plain-text files with ``{name}`` placeholders. Only
lowercase word-shaped tokens count as placeholders, so literal JSON braces in
a template survive filling untouched. Each template carries its content
digest; replay fixtures are keyed by conversation digest, so any drift in a
template text breaks fixture lookup loudly instead of silently changing runs.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

_PLACEHOLDER = re.compile(r"\{([a-z][a-z0-9_]*)\}")

TEMPLATE_NAMES = (
    "self_instruct_plan",
    "self_instruct_final",
    "evol_instruct_plan",
    "evol_instruct_final",
    "self_repair",
    "question_recognition",
    "question_reasoning",
    "answer_recognition",
    "answer_reasoning",
    "rate_chart",
    "judge_qa",
    "judge_correctness",
    "classify_error",
    "cot_suffix",
)


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    text: str
    digest: str
    placeholders: frozenset[str]

    def fill(self, **values: str) -> str:
        unknown = set(values) - self.placeholders
        if unknown:
            raise KeyError(f"template {self.name} has no placeholders {sorted(unknown)}")
        missing = self.placeholders - set(values)
        if missing:
            raise KeyError(f"template {self.name} missing values for {sorted(missing)}")

        def replace(match: re.Match) -> str:
            token = match.group(1)
            return values[token] if token in values else match.group(0)

        return _PLACEHOLDER.sub(replace, self.text)


def _template_from_text(name: str, text: str) -> PromptTemplate:
    text = text.rstrip("\n")
    return PromptTemplate(
        name=name,
        text=text,
        digest=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        placeholders=frozenset(_PLACEHOLDER.findall(text)),
    )


class PromptLibrary:
    """All templates for one run, loaded from a directory of ``<name>.txt``."""

    def __init__(self, templates: dict[str, PromptTemplate]):
        missing = set(TEMPLATE_NAMES) - set(templates)
        if missing:
            raise ValueError(f"missing prompt templates: {sorted(missing)}")
        self._templates = templates

    @classmethod
    def load(cls, prompts_dir: str | Path | None = None) -> "PromptLibrary":
        if prompts_dir is None:
            root = Path(resources.files("chartsynth.assets.prompts"))
        else:
            root = Path(prompts_dir)
        templates = {}
        for name in TEMPLATE_NAMES:
            path = root / f"{name}.txt"
            if not path.exists():
                raise ValueError(f"missing prompt template file {path}")
            templates[name] = _template_from_text(name, path.read_text(encoding="utf-8"))
        return cls(templates)

    def get(self, name: str) -> PromptTemplate:
        return self._templates[name]

    def digests(self) -> dict[str, str]:
        return {name: t.digest for name, t in sorted(self._templates.items())}
