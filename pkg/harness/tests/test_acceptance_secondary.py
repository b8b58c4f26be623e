"""Secondary acceptance: harness conformance and the real-renderer pipeline.

These tests drive the harness exclusively through the child-process protocol
the orchestrator defines, using the orchestrator's own SubprocessRenderer.
"""

from __future__ import annotations

import sys
import time
from contextlib import contextmanager
from pathlib import Path

from chartsynth.packaging.manifest import load_manifest
from chartsynth.pipeline.config import validate_structure
from chartsynth.pipeline.stages import RUN_ALL_ORDER, run_stage
from chartsynth.render.runner import SubprocessRenderer
from chartsynth.render.types import RenderLimits, RenderRequest

HARNESS_CMD = [sys.executable, "-m", "plot_harness"]

BAR_SCRIPT = (
    "import matplotlib.pyplot as plt\n"
    "fig, ax = plt.subplots(figsize=(8, 5))\n"
    "ax.bar(['a', 'b', 'c'], [3, 1, 2])\n"
    "plt.tight_layout()\n"
    "plt.show()\n"
)

TWO_SUBPLOTS = (
    "import matplotlib.pyplot as plt\n"
    "fig, axes = plt.subplots(1, 2, figsize=(10, 4))\n"
    "axes[0].plot([1, 2, 3], [2, 4, 1])\n"
    "axes[1].bar([1, 2], [3, 1])\n"
    "plt.tight_layout()\n"
    "plt.show()\n"
)

INFINITE_LOOP = "while True:\n    pass\n"


@contextmanager
def criterion(number: int, description: str, budget_s: float):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL - {description}")
        raise
    elapsed = time.monotonic() - started
    assert elapsed < budget_s, f"criterion {number} took {elapsed:.1f}s, budget {budget_s}s"
    print(f"[criterion {number}] PASS - {description} ({elapsed:.2f}s)")


def _children_running(marker: str) -> list[str]:
    """Processes under /proc whose command line mentions ``marker``."""
    found = []
    for entry in Path("/proc").iterdir():
        if not entry.name.isdigit():
            continue
        try:
            cmdline = (entry / "cmdline").read_bytes().replace(b"\x00", b" ").decode()
        except OSError:
            continue
        if marker in cmdline:
            found.append(f"{entry.name}: {cmdline.strip()}")
    return found


def test_criterion_9_harness_conformance(tmp_path):
    with criterion(9, "harness: ok/dims/axes, error classes, timeout without orphans", 30.0):
        renderer = SubprocessRenderer(command=HARNESS_CMD, dpi=100)

        ok = renderer.render(
            RenderRequest(code_text=BAR_SCRIPT, output_path=str(tmp_path / "ok.png"))
        )
        assert ok.status == "ok"
        assert ok.width > 0 and ok.height > 0
        assert ok.axes_count == 1
        assert Path(ok.image_path).stat().st_size > 0

        failing = renderer.render(
            RenderRequest(code_text="raise KeyError('boom')", output_path=str(tmp_path / "f.png"))
        )
        assert failing.status == "script_error"
        assert failing.error_class == "KeyError"

        duo = renderer.render(
            RenderRequest(code_text=TWO_SUBPLOTS, output_path=str(tmp_path / "duo.png"))
        )
        assert duo.status == "ok"
        assert duo.axes_count == 2

        before = len(_children_running("plot_harness"))
        timed_out = renderer.render(
            RenderRequest(
                code_text=INFINITE_LOOP,
                output_path=str(tmp_path / "loop.png"),
                limits=RenderLimits(wall_clock_s=5.0),
            )
        )
        assert timed_out.status == "timeout"
        assert timed_out.duration >= 5.0
        time.sleep(0.2)  # give the reaper a beat
        assert len(_children_running("plot_harness")) <= before


def test_criterion_10_real_renderer_pipeline(tmp_path):
    with criterion(10, "demo profile on the real harness: PNGs and dimensions recorded", 180.0):
        config = validate_structure(
            {
                "state_dir": str(tmp_path / "state"),
                "seed": 7,
                "backends": {
                    "synthesis": {
                        "kind": "scripted", "model_id": "scripted-synth",
                        "failure_rate": 0.15, "permanent_rate": 0.05,
                    },
                    "ensemble": [
                        {"kind": "scripted", "model_id": "rater-a"},
                        {"kind": "scripted", "model_id": "rater-b"},
                        {"kind": "scripted", "model_id": "rater-c"},
                    ],
                    "judge": {"kind": "scripted", "model_id": "judge"},
                    "candidate": {"kind": "scripted", "model_id": "candidate"},
                },
                # Reduced step counts: enough to package ~10 charts.
                "counts": {
                    "self_instruct_steps": 8,
                    "evol_instruct_steps": 4,
                    "question_batches_recognition": 1,
                    "question_batches_reasoning": 1,
                },
                "renderer": {
                    "kind": "subprocess",
                    "command": HARNESS_CMD,
                    "dpi": 100,
                    "timeout_s": 60.0,
                    "memory_mb": 2048,
                },
                "concurrency": {"workers": 4, "max_inflight": 4},
            }
        )
        for stage in RUN_ALL_ORDER:
            run_stage(stage, config)

        manifest = load_manifest(Path(config.state_dir) / "dataset")
        assert len(manifest.charts) > 0
        for entry in manifest.charts:
            image = Path(config.state_dir) / "dataset" / entry.image_path
            assert image.exists() and image.stat().st_size > 0
            assert entry.width > 0 and entry.height > 0
