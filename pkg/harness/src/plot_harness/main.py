"""One-shot plotting-script executor.

Protocol: exactly one JSON request line on stdin::

    {"code": "<python source>", "output_path": "<png path>", "dpi": 200}

and exactly one JSON report line on stdout::

    {"status": "ok", "width": W, "height": H, "axes_count": N}
    {"status": "script_error", "error_class": "...", "traceback_tail": "..."}

Non-zero exit codes are reserved for harness-internal failures (an
unparseable request); script failures are ordinary reports. The interactive
display call is neutralized: the first ``plt.show()`` saves the oldest open
figure to ``output_path`` at the requested dpi, and scripts that never call
it still get their first figure saved after execution. Each invocation runs
one script and exits, so no state leaks between scripts.
"""

from __future__ import annotations

import contextlib
import io
import json
import struct
import sys
import traceback

TRACEBACK_TAIL_LINES = 20
DEFAULT_DPI = 200


def png_dimensions(path: str) -> tuple[int, int]:
    """Width/height straight from the IHDR chunk; no imaging library needed."""
    with open(path, "rb") as handle:
        header = handle.read(24)
    if len(header) < 24 or header[:8] != b"\x89PNG\r\n\x1a\n":
        raise ValueError(f"{path} is not a PNG file")
    width, height = struct.unpack(">II", header[16:24])
    return width, height


def run_script(request: dict) -> dict:
    """Execute one plotting script and describe the outcome."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    output_path = str(request["output_path"])
    dpi = int(request.get("dpi", DEFAULT_DPI))
    state: dict = {"figure": None}

    def save_first_figure(*_args, **_kwargs):
        if state["figure"] is not None:
            return
        numbers = plt.get_fignums()
        if not numbers:
            return
        figure = plt.figure(numbers[0])
        figure.savefig(output_path, dpi=dpi)
        state["figure"] = figure

    plt.show = save_first_figure
    namespace = {"__name__": "__main__"}
    # Generated scripts may print; the report line must stay the only stdout.
    swallowed = io.StringIO()
    try:
        with contextlib.redirect_stdout(swallowed):
            exec(compile(request["code"], "<plot-script>", "exec"), namespace)
            save_first_figure()
    except (Exception, SystemExit) as exc:
        tail = traceback.format_exc().splitlines()[-TRACEBACK_TAIL_LINES:]
        return {
            "status": "script_error",
            "error_class": type(exc).__name__,
            "traceback_tail": "\n".join(tail),
        }
    finally:
        plt.close("all")

    if state["figure"] is None:
        return {
            "status": "script_error",
            "error_class": "NoFigureProduced",
            "traceback_tail": "the script created no figure to save",
        }
    width, height = png_dimensions(output_path)
    return {
        "status": "ok",
        "width": width,
        "height": height,
        "axes_count": len(state["figure"].axes),
    }


def main(stdin=None, stdout=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    line = stdin.readline()
    try:
        request = json.loads(line)
        if not isinstance(request, dict):
            raise TypeError("request must be an object")
        request["code"]
        request["output_path"]
    except (json.JSONDecodeError, TypeError, KeyError) as exc:
        print(f"unparseable request line: {exc}", file=sys.stderr)
        return 2
    report = run_script(request)
    print(json.dumps(report), file=stdout, flush=True)
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
