"""ROUGE-L text similarity and near-duplicate filtering.

Tokenization is lowercase alphanumeric runs, which keeps the score
deterministic and locale-independent. The score is the plain F1 over the
longest common subsequence of the two token streams.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def lcs_length(a: list[str], b: list[str]) -> int:
    """Two-row dynamic program, O(len(a) * len(b)) time, O(len(b)) space."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for token_a in a:
        current = [0] * (len(b) + 1)
        for j, token_b in enumerate(b, start=1):
            if token_a == token_b:
                current[j] = previous[j - 1] + 1
            else:
                current[j] = max(previous[j], current[j - 1])
        previous = current
    return previous[len(b)]


def rouge_l(a: str, b: str) -> float:
    """LCS F1 in [0, 1]; 1.0 exactly when the token sequences are identical."""
    tokens_a = tokenize(a)
    tokens_b = tokenize(b)
    lcs = lcs_length(tokens_a, tokens_b)
    precision = lcs / len(tokens_a) if tokens_a else 0.0
    recall = lcs / len(tokens_b) if tokens_b else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def dedup_filter(candidates, accepted, threshold: float) -> list[str]:
    """Ordered scan: keep a candidate iff its best ROUGE-L against everything
    accepted so far (prior plus already-kept) stays below ``threshold``."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    reference = list(accepted)
    kept: list[str] = []
    for candidate in candidates:
        score = max(
            (rouge_l(candidate, other) for other in reference + kept),
            default=0.0,
        )
        if score < threshold:
            kept.append(candidate)
    return kept
