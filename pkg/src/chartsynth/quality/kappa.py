"""Cohen's kappa agreement audit between two annotators.

Observed and expected agreement are computed in exact rational arithmetic so
the degenerate ``p_e == 1`` case is detected reliably.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


@dataclass(frozen=True)
class AnnotationRecord:
    item_id: str
    annotator_id: str
    label: str


def load_annotations(path: str | Path, annotator_id: str) -> list[AnnotationRecord]:
    """Line-delimited ``item_id<TAB>label`` file."""
    records = []
    seen: set[str] = set()
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        item_id, _, label = line.partition("\t")
        if not label:
            raise ValueError(f"{path}:{number}: expected 'item_id<TAB>label'")
        if item_id in seen:
            raise ValueError(f"{path}:{number}: duplicate item {item_id!r}")
        seen.add(item_id)
        records.append(AnnotationRecord(item_id=item_id, annotator_id=annotator_id, label=label))
    return records


def cohen_kappa(a, b) -> float:
    """Chance-corrected agreement between two annotators over the same items."""
    labels_a = {r.item_id: r.label for r in a}
    labels_b = {r.item_id: r.label for r in b}
    if len(labels_a) != len(a) or len(labels_b) != len(b):
        raise ValueError("each annotator may label an item only once")
    if set(labels_a) != set(labels_b):
        raise ValueError("annotators must label the same item set")
    if not labels_a:
        raise ValueError("no items to compare")

    n = len(labels_a)
    agreements = sum(1 for item in labels_a if labels_a[item] == labels_b[item])
    p_o = Fraction(agreements, n)

    marginal_a = Counter(labels_a.values())
    marginal_b = Counter(labels_b.values())
    categories = set(marginal_a) | set(marginal_b)
    p_e = sum(
        (Fraction(marginal_a.get(c, 0), n) * Fraction(marginal_b.get(c, 0), n) for c in categories),
        Fraction(0),
    )

    if p_e == 1:
        if p_o == 1:
            return 1.0
        raise ValueError("degenerate marginals (p_e = 1) with disagreement present")
    return float((p_o - p_e) / (1 - p_e))
