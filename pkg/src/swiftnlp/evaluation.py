"""Scoring: tag accuracy, conlleval-style entity F1, confusion counts, timing."""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

log = logging.getLogger(__name__)


def token_accuracy(pred: Sequence, gold: Sequence) -> float:
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {len(pred)} predicted vs {len(gold)} gold")
    if not gold:
        return 0.0
    return sum(p == g for p, g in zip(pred, gold)) / len(gold)


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    correct: int = 0
    predicted: int = 0
    gold: int = 0

    @classmethod
    def from_counts(cls, correct: int, predicted: int, gold: int) -> "PRF":
        p = correct / predicted if predicted else 0.0
        r = correct / gold if gold else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f, correct, predicted, gold)


def split_label(label: str) -> tuple[str, str]:
    """``"B-PER"`` -> ``("B", "PER")``; ``"O"`` -> ``("O", "")``; bare ``"I"`` has no type."""
    if label == "O" or not label:
        return "O", ""
    prefix, sep, etype = label.partition("-")
    if not sep:
        return label, ""
    return prefix, etype


def _chunk_end(prev_tag, tag, prev_type, etype) -> bool:
    if prev_tag == "O":
        return False
    if prev_tag in ("E", "S") or tag in ("O", "B", "S"):
        return True
    return prev_type != etype


def _chunk_start(prev_tag, tag, prev_type, etype) -> bool:
    if tag == "O":
        return False
    if tag in ("B", "S") or prev_tag in ("O", "E", "S"):
        return True
    return prev_type != etype


def entity_f1(pred: Sequence[str], gold: Sequence[str]) -> tuple[PRF, dict[str, PRF]]:
    """Phrase-level precision/recall/F1 with conlleval semantics.

    A predicted phrase counts only if its span and type both match a gold
    phrase. ``I-X`` after ``O`` (or after another type) opens a phrase.
    Returns the micro-averaged overall score and per-type scores.
    """
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {len(pred)} predicted vs {len(gold)} gold")
    correct = 0
    found_pred: Counter = Counter()
    found_gold: Counter = Counter()
    correct_by: Counter = Counter()
    in_correct = False
    last_correct_type = ""
    pg, pgt, pp, ppt = "O", "", "O", ""
    for p_label, g_label in zip(list(pred) + ["O"], list(gold) + ["O"]):
        gt, gty = split_label(g_label)
        pt, pty = split_label(p_label)
        end_g = _chunk_end(pg, gt, pgt, gty)
        end_p = _chunk_end(pp, pt, ppt, pty)
        start_g = _chunk_start(pg, gt, pgt, gty)
        start_p = _chunk_start(pp, pt, ppt, pty)
        if in_correct:
            if end_g and end_p and pgt == ppt:
                in_correct = False
                correct += 1
                correct_by[last_correct_type] += 1
            elif end_g != end_p or gty != pty:
                in_correct = False
        if start_g and start_p and gty == pty:
            in_correct = True
            last_correct_type = gty
        if start_g:
            found_gold[gty] += 1
        if start_p:
            found_pred[pty] += 1
        pg, pgt, pp, ppt = gt, gty, pt, pty
    overall = PRF.from_counts(correct, sum(found_pred.values()), sum(found_gold.values()))
    types = sorted(set(found_gold) | set(found_pred))
    per_type = {t: PRF.from_counts(correct_by[t], found_pred[t], found_gold[t]) for t in types}
    return overall, per_type


def entity_spans(labels: Sequence[str]) -> list[tuple[int, int, str]]:
    """Phrases as ``(start, end, type)`` under the same chunk rules."""
    out = []
    start = None
    prev_tag, prev_type = "O", ""
    for i, label in enumerate(list(labels) + ["O"]):
        tag, etype = split_label(label)
        if start is not None and _chunk_end(prev_tag, tag, prev_type, etype):
            out.append((start, i, prev_type))
            start = None
        if _chunk_start(prev_tag, tag, prev_type, etype):
            start = i
        prev_tag, prev_type = tag, etype
    return out


def entity_type(label: str) -> str:
    """Token-level class for confusion counts: the type, or ``O``."""
    tag, etype = split_label(label)
    return "O" if tag == "O" else (etype or tag)


def confusion_matrix(gold: Sequence[Hashable], pred: Sequence[Hashable],
                     labels: Sequence[Hashable] | None = None) -> tuple[list, list[list[int]]]:
    """Counts ``m[i][j]`` of gold ``labels[i]`` predicted as ``labels[j]``."""
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {len(pred)} predicted vs {len(gold)} gold")
    if labels is None:
        labels = sorted(set(gold) | set(pred), key=str)
    index = {lab: i for i, lab in enumerate(labels)}
    m = [[0] * len(labels) for _ in labels]
    for g, p in zip(gold, pred):
        if g not in index or p not in index:
            raise ValueError(f"label outside the label set: {g!r} / {p!r}")
        m[index[g]][index[p]] += 1
    return list(labels), m


def chunk_token_f1(pred: Sequence[str], gold: Sequence[str]) -> PRF:
    """Token-level F1 of the inside-an-entity class (I and B merged, O apart)."""
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {len(pred)} predicted vs {len(gold)} gold")
    tp = sum(1 for p, g in zip(pred, gold) if p != "O" and g != "O")
    npred = sum(1 for p in pred if p != "O")
    ngold = sum(1 for g in gold if g != "O")
    return PRF.from_counts(tp, npred, ngold)


@dataclass(frozen=True)
class ErrorBreakdown:
    """Token errors split into chunking (one side is O) and typing (type vs type)."""

    chunking: int
    classification: int


def ner_error_breakdown(gold: Sequence[str], pred: Sequence[str]) -> ErrorBreakdown:
    chunking = classification = 0
    for g, p in zip(gold, pred):
        g, p = entity_type(g), entity_type(p)
        if g == p:
            continue
        if g == "O" or p == "O":
            chunking += 1
        else:
            classification += 1
    return ErrorBreakdown(chunking, classification)


@dataclass
class EvalReport:
    accuracy: float = 0.0
    per_class: dict[str, PRF] = field(default_factory=dict)
    confusion: tuple[list, list[list[int]]] = field(default_factory=lambda: ([], []))
    tokens_per_second: float | None = None

    def to_tsv(self) -> str:
        lines = ["metric\tlabel\tvalue", f"accuracy\t-\t{self.accuracy:.6f}"]
        for label, s in sorted(self.per_class.items()):
            lines.append(f"precision\t{label}\t{s.precision:.6f}")
            lines.append(f"recall\t{label}\t{s.recall:.6f}")
            lines.append(f"f1\t{label}\t{s.f1:.6f}")
        labels, m = self.confusion
        for g, row in zip(labels, m):
            for p, n in zip(labels, row):
                lines.append(f"confusion\t{g}->{p}\t{n}")
        if self.tokens_per_second is not None:
            lines.append(f"tokens_per_second\t-\t{self.tokens_per_second:.1f}")
        return "\n".join(lines) + "\n"


# -- throughput --------------------------------------------------------------

@dataclass(frozen=True)
class Throughput:
    units: int
    runs: tuple[float, ...]
    mean_seconds: float
    per_second: float
    reliable: bool
    note: str = ""


def measure_throughput(stage: Callable[[object], object], data, units: int,
                       repetitions: int = 5, min_seconds: float = 1.0) -> Throughput:
    """Mean wall time of ``repetitions`` calls of ``stage(data)``.

    ``units`` is the amount of work in ``data`` (tokens or words); set-up
    such as resource loading must happen before this call. A result is
    flagged unreliable when any run is shorter than ``min_seconds``.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    runs = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        stage(data)
        runs.append(time.perf_counter() - t0)
    mean = sum(runs) / len(runs)
    note = ""
    if units <= 0:
        note = "no input"
    elif min(runs) < min_seconds:
        note = f"shortest run {min(runs):.3f}s is under {min_seconds}s; use a larger input"
    if note:
        log.warning("throughput unreliable: %s", note)
    rate = units / mean if units > 0 and mean > 0 else 0.0
    return Throughput(units, tuple(runs), mean, rate, not note, note)
