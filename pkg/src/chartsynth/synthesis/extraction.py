"""Fenced code-block extraction from model replies."""

from __future__ import annotations

from ..errors import AmbiguousCodeBlockError, NoCodeBlockError


def _is_fence(line: str) -> bool:
    return line.startswith("```")


def extract_code_block(text: str) -> str:
    """Return the interior of exactly one fenced block.

    A fence is a line starting with three backticks; the opening fence may
    carry a language tag. The newlines adjacent to the fences are consumed by
    the line split, which is exactly the leading/trailing trim the contract
    asks for and keeps ``extract(wrap(code)) == code`` for fence-free code.
    Zero complete blocks raise ``NoCodeBlockError``, more than one raise
    ``AmbiguousCodeBlockError``.
    """
    lines = text.split("\n")
    blocks: list[list[str]] = []
    current: list[str] | None = None
    for line in lines:
        if _is_fence(line):
            if current is None:
                current = []
            else:
                blocks.append(current)
                current = None
        elif current is not None:
            current.append(line)
    if not blocks:
        raise NoCodeBlockError("reply contains no complete fenced code block")
    if len(blocks) > 1:
        raise AmbiguousCodeBlockError(f"reply contains {len(blocks)} fenced code blocks")
    return "\n".join(blocks[0])


def wrap_code_block(code: str, language: str = "python") -> str:
    return f"```{language}\n{code}\n```"
