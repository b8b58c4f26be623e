"""Cohen's kappa: worked examples and invariance properties."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chartsynth.quality.kappa import AnnotationRecord, cohen_kappa, load_annotations


def _records(labels, annotator):
    return [AnnotationRecord(item_id=f"i{n}", annotator_id=annotator, label=label)
            for n, label in enumerate(labels)]


def _from_confusion(both_yes, a_yes_b_no, a_no_b_yes, both_no):
    a_labels, b_labels = [], []
    a_labels += ["yes"] * both_yes + ["yes"] * a_yes_b_no + ["no"] * a_no_b_yes + ["no"] * both_no
    b_labels += ["yes"] * both_yes + ["no"] * a_yes_b_no + ["yes"] * a_no_b_yes + ["no"] * both_no
    return _records(a_labels, "a"), _records(b_labels, "b")


def test_identical_annotations():
    a = _records(["x", "y", "x", "z"], "a")
    b = _records(["x", "y", "x", "z"], "b")
    assert cohen_kappa(a, b) == 1.0


def test_worked_confusion_matrix():
    # counts {both-yes 20, a-yes/b-no 5, a-no/b-yes 10, both-no 15}
    # p_o = 35/50 = 0.7; p_e = 0.5*0.6 + 0.5*0.4 = 0.5; kappa = 0.4
    a, b = _from_confusion(20, 5, 10, 15)
    assert cohen_kappa(a, b) == pytest.approx(0.4, abs=1e-9)


def test_independent_labels_near_zero():
    rng = random.Random(11)
    n = 20_000
    a = _records([rng.choice(["u", "v"]) for _ in range(n)], "a")
    b = _records([rng.choice(["u", "v"]) for _ in range(n)], "b")
    assert abs(cohen_kappa(a, b)) < 0.03


def test_mismatched_item_sets_rejected():
    a = _records(["x"], "a")
    b = [AnnotationRecord(item_id="other", annotator_id="b", label="x")]
    with pytest.raises(ValueError):
        cohen_kappa(a, b)


def test_degenerate_agreement_is_one():
    a = _records(["same", "same"], "a")
    b = _records(["same", "same"], "b")
    assert cohen_kappa(a, b) == 1.0


def test_duplicate_item_rejected():
    a = [AnnotationRecord("i0", "a", "x"), AnnotationRecord("i0", "a", "y")]
    with pytest.raises(ValueError):
        cohen_kappa(a, _records(["x", "y"], "b"))


label_lists = st.lists(st.sampled_from(["p", "q", "r"]), min_size=2, max_size=40)


@given(label_lists, label_lists)
@settings(max_examples=100)
def test_swap_invariance(labels_a, labels_b):
    n = min(len(labels_a), len(labels_b))
    a, b = _records(labels_a[:n], "a"), _records(labels_b[:n], "b")
    try:
        forward = cohen_kappa(a, b)
    except ValueError:
        with pytest.raises(ValueError):
            cohen_kappa(b, a)
        return
    assert cohen_kappa(b, a) == pytest.approx(forward, abs=1e-12)


@given(label_lists, label_lists, st.permutations(["p", "q", "r"]))
@settings(max_examples=100)
def test_relabel_invariance(labels_a, labels_b, permutation):
    n = min(len(labels_a), len(labels_b))
    mapping = dict(zip(["p", "q", "r"], permutation))
    a, b = _records(labels_a[:n], "a"), _records(labels_b[:n], "b")
    a2 = _records([mapping[r.label] for r in a], "a")
    b2 = _records([mapping[r.label] for r in b], "b")
    try:
        original = cohen_kappa(a, b)
    except ValueError:
        return
    assert cohen_kappa(a2, b2) == pytest.approx(original, abs=1e-12)


def test_load_annotations_format(tmp_path):
    path = tmp_path / "ann.tsv"
    path.write_text("# comment\nitem-1\tyes\nitem-2\tno\n", encoding="utf-8")
    records = load_annotations(path, "a")
    assert [(r.item_id, r.label) for r in records] == [("item-1", "yes"), ("item-2", "no")]
    bad = tmp_path / "bad.tsv"
    bad.write_text("item-without-label\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_annotations(bad, "a")
