"""Subprocess renderer speaking the one-line-in / one-line-out protocol.

The child receives one JSON line on stdin: ``{code, output_path, dpi}`` and
must answer with one JSON line on stdout:
``{status, error_class, traceback_tail, width, height, axes_count}``.
Non-zero exit codes and protocol garbage map to ``harness_error``; wall-clock
overruns kill the child's whole process group and map to ``timeout``.
"""

from __future__ import annotations

import json
import os
import signal
import subprocess
import time
from pathlib import Path
from typing import Sequence

from .types import RenderRequest, RenderResult

try:
    import resource
except ImportError:  # pragma: no cover - non-POSIX
    resource = None


class SubprocessRenderer:
    def __init__(self, command: Sequence[str], dpi: int = 200):
        if not command:
            raise ValueError("renderer command must not be empty")
        if dpi <= 0:
            raise ValueError("dpi must be positive")
        self.command = list(command)
        self.dpi = dpi

    def _preexec(self, memory_bytes: int):
        def apply_limits():  # pragma: no cover - runs in the child
            if resource is not None:
                resource.setrlimit(resource.RLIMIT_AS, (memory_bytes, memory_bytes))

        return apply_limits

    def render(self, request: RenderRequest) -> RenderResult:
        Path(request.output_path).parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(
            {"code": request.code_text, "output_path": str(request.output_path), "dpi": self.dpi}
        )
        started = time.monotonic()
        proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL,
            text=True,
            start_new_session=True,
            preexec_fn=self._preexec(request.limits.memory_bytes),
        )
        try:
            stdout, _ = proc.communicate(line + "\n", timeout=request.limits.wall_clock_s)
        except subprocess.TimeoutExpired:
            self._kill_group(proc)
            proc.wait()
            return RenderResult(status="timeout", duration=time.monotonic() - started)
        duration = time.monotonic() - started

        if proc.returncode != 0:
            return RenderResult(
                status="harness_error",
                error_class="HarnessExit",
                traceback_tail=f"harness exited with code {proc.returncode}",
                duration=duration,
            )
        try:
            report = json.loads(stdout.strip().splitlines()[-1])
        except (json.JSONDecodeError, IndexError):
            return RenderResult(
                status="harness_error",
                error_class="HarnessProtocol",
                traceback_tail=f"unparseable harness reply: {stdout[:200]!r}",
                duration=duration,
            )
        return self._from_report(report, request, duration)

    @staticmethod
    def _kill_group(proc: subprocess.Popen) -> None:
        try:
            os.killpg(proc.pid, signal.SIGKILL)
        except (ProcessLookupError, PermissionError):  # already gone
            proc.kill()

    def _from_report(self, report: dict, request: RenderRequest, duration: float) -> RenderResult:
        status = report.get("status")
        if status == "ok":
            width = int(report.get("width", 0))
            height = int(report.get("height", 0))
            if width <= 0 or height <= 0 or not Path(request.output_path).exists():
                return RenderResult(
                    status="harness_error",
                    error_class="HarnessProtocol",
                    traceback_tail="harness reported ok without a usable image",
                    duration=duration,
                )
            return RenderResult(
                status="ok",
                image_path=str(request.output_path),
                width=width,
                height=height,
                axes_count=int(report.get("axes_count", 1)),
                duration=duration,
            )
        if status == "script_error":
            return RenderResult(
                status="script_error",
                error_class=report.get("error_class"),
                traceback_tail=report.get("traceback_tail"),
                duration=duration,
            )
        return RenderResult(
            status="harness_error",
            error_class="HarnessProtocol",
            traceback_tail=f"unknown harness status {status!r}",
            duration=duration,
        )


def render(request: RenderRequest, renderer) -> RenderResult:
    """Module-level entry point; ``renderer`` is any object with ``render``."""
    return renderer.render(request)
