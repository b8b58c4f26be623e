"""Chat-completion backends: live HTTP, deterministic replay, and bounding.

Every backend exposes the same surface::

    complete(conversation, params) -> (ChatMessage, Usage)

The returned message always has role ``assistant``; usage is returned to the
caller, never recorded here.
"""

from __future__ import annotations

import base64
import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import requests

from ..errors import BackendError, EmptyResponseError, FixtureMissingError
from .messages import ChatMessage, CompletionParams, Usage, check_conversation, conversation_digest


class Backend(Protocol):
    model_id: str

    def complete(
        self, conversation: Sequence[ChatMessage], params: CompletionParams
    ) -> tuple[ChatMessage, Usage]: ...


@dataclass(frozen=True)
class RetryPolicy:
    """Exponential backoff over transient (transport / 5xx / 429) failures."""

    attempts: int = 3
    base_delay_s: float = 0.5
    max_delay_s: float = 8.0

    def delay(self, attempt: int) -> float:
        return min(self.base_delay_s * (2**attempt), self.max_delay_s)


class TransientBackendError(BackendError):
    """Retryable failure: transport error or 5xx-class response."""


def _encode_image(path: str) -> str:
    data = Path(path).read_bytes()
    return base64.b64encode(data).decode("ascii")


def _wire_message(message: ChatMessage) -> dict:
    if not message.image_refs:
        return {"role": message.role, "content": message.text}
    content: list[dict] = []
    if message.text:
        content.append({"type": "text", "text": message.text})
    for ref in message.image_refs:
        content.append(
            {
                "type": "image_url",
                "image_url": {"url": f"data:image/png;base64,{_encode_image(ref)}"},
            }
        )
    return {"role": message.role, "content": content}


class HttpBackend:
    """Provider-agnostic chat-completions endpoint speaking the common JSON schema.

    ``post`` and ``sleep`` are injectable for tests; the default transport is
    ``requests.post``. The API key is read from the environment variable named
    by ``api_key_env`` at call time, never stored in config files.
    """

    def __init__(
        self,
        url: str,
        model: str,
        api_key_env: str = "",
        model_id: str | None = None,
        retry: RetryPolicy | None = None,
        timeout_s: float = 120.0,
        post=None,
        sleep=time.sleep,
    ):
        self.url = url
        self.model = model
        self.api_key_env = api_key_env
        self.model_id = model_id or model
        self.retry = retry or RetryPolicy()
        self.timeout_s = timeout_s
        self._post = post or requests.post
        self._sleep = sleep

    def _headers(self) -> dict:
        import os

        headers = {"Content-Type": "application/json"}
        if self.api_key_env:
            key = os.environ.get(self.api_key_env)
            if not key:
                raise BackendError(f"environment variable {self.api_key_env} is not set")
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def _attempt(self, payload: dict) -> dict:
        try:
            response = self._post(
                self.url, json=payload, headers=self._headers(), timeout=self.timeout_s
            )
        except requests.RequestException as exc:
            raise TransientBackendError(f"transport failure: {exc}") from exc
        if response.status_code >= 500 or response.status_code == 429:
            raise TransientBackendError(f"retryable status {response.status_code}")
        if response.status_code >= 400:
            raise BackendError(f"backend rejected request: {response.status_code} {response.text[:200]}")
        return response.json()

    def complete(self, conversation, params: CompletionParams):
        check_conversation(conversation)
        payload = {
            "model": self.model,
            "messages": [_wire_message(m) for m in conversation],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        if params.seed is not None:
            payload["seed"] = params.seed
        payload.update(params.extra)

        last_error: Exception | None = None
        for attempt in range(self.retry.attempts):
            try:
                body = self._attempt(payload)
                break
            except TransientBackendError as exc:
                last_error = exc
                if attempt + 1 < self.retry.attempts:
                    self._sleep(self.retry.delay(attempt))
        else:
            raise BackendError(
                f"backend failed after {self.retry.attempts} attempts: {last_error}"
            ) from last_error

        try:
            text = body["choices"][0]["message"]["content"]
            usage_body = body.get("usage", {})
        except (KeyError, IndexError, TypeError) as exc:
            raise BackendError(f"malformed backend response: {exc}") from exc
        if not text:
            raise EmptyResponseError("backend returned empty text")
        usage = Usage(
            prompt_tokens=int(usage_body.get("prompt_tokens", 0)),
            completion_tokens=int(usage_body.get("completion_tokens", 0)),
        )
        return ChatMessage(role="assistant", text=text), usage


class ReplayBackend:
    """Serves stored responses keyed by conversation digest.

    The fixture directory holds one JSON file per digest:
    ``{digest, response_text, prompt_tokens, completion_tokens}``.
    """

    def __init__(self, fixtures_dir: str | Path, model_id: str = "replay"):
        self.fixtures_dir = Path(fixtures_dir)
        self.model_id = model_id

    def complete(self, conversation, params: CompletionParams):
        check_conversation(conversation)
        digest = conversation_digest(conversation)
        path = self.fixtures_dir / f"{digest}.json"
        if not path.exists():
            raise FixtureMissingError(digest)
        body = json.loads(path.read_text(encoding="utf-8"))
        text = body["response_text"]
        if not text:
            raise EmptyResponseError(f"fixture {digest} has empty text")
        usage = Usage(int(body["prompt_tokens"]), int(body["completion_tokens"]))
        return ChatMessage(role="assistant", text=text), usage


def save_fixture(fixtures_dir: str | Path, conversation, response_text: str, usage: Usage) -> Path:
    """Write a replay fixture for ``conversation``; returns the file path."""
    digest = conversation_digest(conversation)
    path = Path(fixtures_dir) / f"{digest}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    body = {
        "digest": digest,
        "response_text": response_text,
        "prompt_tokens": usage.prompt_tokens,
        "completion_tokens": usage.completion_tokens,
    }
    path.write_text(json.dumps(body, indent=2, sort_keys=True), encoding="utf-8")
    return path


class BoundedBackend:
    """Caps in-flight calls to the wrapped backend with a semaphore."""

    def __init__(self, inner: Backend, max_inflight: int = 4):
        if max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")
        self.inner = inner
        self.model_id = inner.model_id
        self._slots = threading.Semaphore(max_inflight)

    def complete(self, conversation, params: CompletionParams):
        with self._slots:
            return self.inner.complete(conversation, params)
