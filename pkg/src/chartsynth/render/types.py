"""Render request/result types shared by all renderers."""

from __future__ import annotations

from dataclasses import dataclass

RENDER_STATUSES = ("ok", "script_error", "timeout", "harness_error")

GIB = 1024**3


@dataclass(frozen=True)
class RenderLimits:
    wall_clock_s: float = 60.0
    memory_bytes: int = GIB

    def __post_init__(self):
        if self.wall_clock_s <= 0 or self.memory_bytes <= 0:
            raise ValueError("limits must be positive")


@dataclass(frozen=True)
class RenderRequest:
    code_text: str
    output_path: str
    limits: RenderLimits = RenderLimits()


@dataclass(frozen=True)
class RenderResult:
    status: str
    image_path: str | None = None
    width: int = 0
    height: int = 0
    axes_count: int = 0
    error_class: str | None = None
    traceback_tail: str | None = None
    duration: float = 0.0

    def __post_init__(self):
        if self.status not in RENDER_STATUSES:
            raise ValueError(f"invalid render status {self.status!r}")
        if self.status == "ok" and (self.image_path is None or self.width <= 0 or self.height <= 0):
            raise ValueError("ok results must carry an image with positive dimensions")
        if self.status != "ok" and self.image_path is not None:
            raise ValueError("non-ok results must not claim an image")

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def error_text(result: RenderResult) -> str:
    """Error description fed back into the repair prompt."""
    parts = []
    if result.status == "timeout":
        parts.append("TimeoutError: execution exceeded the wall-clock limit")
    if result.error_class:
        parts.append(result.error_class)
    if result.traceback_tail:
        parts.append(result.traceback_tail)
    return "\n".join(parts) if parts else result.status
