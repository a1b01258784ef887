"""Set comparison of normalized triple sets: counts, precision, recall, F1."""
from __future__ import annotations

from dataclasses import dataclass

from .canon import NormalizedTripleSet

__all__ = ["DiffScores", "triple_set_scores"]


@dataclass(frozen=True)
class DiffScores:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float


def triple_set_scores(
    candidate: NormalizedTripleSet, reference: NormalizedTripleSet
) -> DiffScores:
    """Score a candidate triple set against a reference by exact set overlap.

    Two empty sets count as a perfect match.  An empty candidate against a
    non-empty reference scores zero precision, and vice versa for recall.
    """
    cand = candidate.as_set()
    ref = reference.as_set()
    tp = len(cand & ref)
    fp = len(cand - ref)
    fn = len(ref - cand)
    if not cand and not ref:
        return DiffScores(0, 0, 0, 1.0, 1.0, 1.0)
    precision = tp / len(cand) if cand else 0.0
    recall = tp / len(ref) if ref else 0.0
    if precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return DiffScores(tp, fp, fn, precision, recall, f1)
