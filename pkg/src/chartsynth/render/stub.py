"""Deterministic stand-in renderer: no child process, byte-stable images.

Marker contract for scripts:

* ``#FAIL:<ExceptionName>`` anywhere in the script -> ``script_error`` with
  that error class;
* ``#AXES:<n>`` -> the reported axes count (default 1);
* anything else renders "ok" with a pattern image whose pixels derive from
  the script digest, so identical requests always produce identical bytes.
"""

from __future__ import annotations

import hashlib
import re
import struct
import zlib
from pathlib import Path

from .types import RenderRequest, RenderResult

_FAIL = re.compile(r"^#FAIL:([A-Za-z_][A-Za-z0-9_]*)\s*$", re.MULTILINE)
_AXES = re.compile(r"^#AXES:(\d+)\s*$", re.MULTILINE)


def _png_chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF)
    )


def write_pattern_png(path: str | Path, width: int, height: int, seed: bytes) -> None:
    """Minimal RGB PNG with pixel bytes drawn from a sha256 stream over ``seed``.

    A 2 KiB digest block is tiled across the image; enough to make distinct
    seeds visually distinct while keeping generation cheap at any size.
    """
    row_len = width * 3
    needed = row_len * height
    block = b"".join(
        hashlib.sha256(seed + counter.to_bytes(4, "big")).digest() for counter in range(64)
    )
    stream = (block * (needed // len(block) + 1))[:needed]
    raw = bytearray()
    offset = 0
    for _ in range(height):
        raw.append(0)  # filter type: none
        raw += stream[offset : offset + row_len]
        offset += row_len
    header = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    png = (
        b"\x89PNG\r\n\x1a\n"
        + _png_chunk(b"IHDR", header)
        + _png_chunk(b"IDAT", zlib.compress(bytes(raw), 9))
        + _png_chunk(b"IEND", b"")
    )
    Path(path).write_bytes(png)


class StubRenderer:
    def __init__(self, width: int = 640, height: int = 480):
        if width <= 0 or height <= 0:
            raise ValueError("stub image dimensions must be positive")
        self.width = width
        self.height = height

    def render(self, request: RenderRequest) -> RenderResult:
        fail = _FAIL.search(request.code_text)
        if fail:
            error_class = fail.group(1)
            return RenderResult(
                status="script_error",
                error_class=error_class,
                traceback_tail=(
                    "Traceback (most recent call last):\n"
                    '  File "<script>", line 1, in <module>\n'
                    f"{error_class}: injected by #FAIL marker"
                ),
            )
        axes = _AXES.search(request.code_text)
        axes_count = int(axes.group(1)) if axes else 1
        Path(request.output_path).parent.mkdir(parents=True, exist_ok=True)
        seed = hashlib.sha256(request.code_text.encode("utf-8")).digest()
        write_pattern_png(request.output_path, self.width, self.height, seed)
        return RenderResult(
            status="ok",
            image_path=str(request.output_path),
            width=self.width,
            height=self.height,
            axes_count=axes_count,
        )
