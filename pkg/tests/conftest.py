from __future__ import annotations

import pytest

from chartsynth.gateway.messages import ChatMessage, Usage, check_conversation
from chartsynth.prompts import PromptLibrary
from chartsynth.taxonomy import load_registry


@pytest.fixture(scope="session")
def templates() -> PromptLibrary:
    return PromptLibrary.load()


@pytest.fixture(scope="session")
def registry():
    return load_registry()


class StaticBackend:
    """Serves a fixed queue of reply texts; handy for verdict-shaped tests."""

    def __init__(self, replies, model_id="static", usage=Usage(10, 5)):
        self.model_id = model_id
        self._replies = list(replies)
        self._usage = usage
        self.calls = 0

    def complete(self, conversation, params):
        check_conversation(conversation)
        if not self._replies:
            raise AssertionError("StaticBackend ran out of replies")
        self.calls += 1
        text = self._replies.pop(0)
        return ChatMessage(role="assistant", text=text), self._usage


@pytest.fixture
def static_backend():
    return StaticBackend


def no_usage(label, usage):
    """Usage sink for tests that do not track cost."""
