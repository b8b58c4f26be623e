"""Conversation message and token-usage value types."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

ROLES = ("system", "user", "assistant")


@dataclass(frozen=True)
class ChatMessage:
    """One turn of a chat conversation, optionally carrying image attachments."""

    role: str
    text: str
    image_refs: tuple[str, ...] = ()

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"invalid role {self.role!r}")
        if not self.text and not self.image_refs:
            raise ValueError("message needs text or at least one image")
        object.__setattr__(self, "image_refs", tuple(self.image_refs))


@dataclass(frozen=True)
class Usage:
    """Token counts for a single backend call."""

    prompt_tokens: int
    completion_tokens: int

    def __post_init__(self):
        if self.prompt_tokens < 0 or self.completion_tokens < 0:
            raise ValueError("token counts must be non-negative")

    def __add__(self, other: "Usage") -> "Usage":
        return Usage(
            self.prompt_tokens + other.prompt_tokens,
            self.completion_tokens + other.completion_tokens,
        )


@dataclass
class CompletionParams:
    """Sampling parameters forwarded to a backend."""

    temperature: float = 1.0
    max_tokens: int = 4096
    seed: int | None = None
    extra: dict = field(default_factory=dict)


def image_digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def conversation_digest(conversation) -> str:
    """Stable digest of a conversation: roles, text, and image content.

    Field ordering cannot affect the digest because the canonical form is a
    fixed-key JSON document.
    """
    canonical = [
        {
            "role": m.role,
            "text": m.text,
            "images": [image_digest(p) for p in m.image_refs],
        }
        for m in conversation
    ]
    payload = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def check_conversation(conversation) -> None:
    """Shared precondition for every backend: non-empty, ends with a user turn."""
    if not conversation:
        raise ValueError("conversation must not be empty")
    if conversation[-1].role != "user":
        raise ValueError("conversation must end with a user message")
