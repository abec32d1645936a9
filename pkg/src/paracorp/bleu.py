"""Corpus and sentence-level BLEU (uniform weights, n = 1..4)."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuReport:
    """Score on the 0-100 scale at full precision; round only for display.

    A precision is None when neither hypothesis nor reference has n-grams of
    that order; such orders are left out of the geometric mean.
    A corpus whose sentences are all empty on both sides scores 100.
    """

    score: float
    precisions: tuple[float | None, ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int
    smoothing: str = "none"

    def formatted(self) -> str:
        return f"{self.score:.2f}"

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"score": self.score}
        for n, p in enumerate(self.precisions, start=1):
            payload[f"p{n}"] = p
        payload.update(
            bp=self.brevity_penalty,
            hyp_len=self.hyp_len,
            ref_len=self.ref_len,
            smoothing=self.smoothing,
        )
        return payload


@dataclass
class NgramStats:
    """Clipped matches and totals per order; merges associatively."""

    matches: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)
    totals: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)
    ref_totals: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)
    hyp_len: int = 0
    ref_len: int = 0

    def merge(self, other: "NgramStats") -> "NgramStats":
        for n in range(MAX_ORDER):
            self.matches[n] += other.matches[n]
            self.totals[n] += other.totals[n]
            self.ref_totals[n] += other.ref_totals[n]
        self.hyp_len += other.hyp_len
        self.ref_len += other.ref_len
        return self


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def sentence_stats(hypothesis: Sequence[str], reference: Sequence[str]) -> NgramStats:
    stats = NgramStats(hyp_len=len(hypothesis), ref_len=len(reference))
    for n in range(1, MAX_ORDER + 1):
        hyp_counts = _ngrams(hypothesis, n)
        ref_counts = _ngrams(reference, n)
        stats.matches[n - 1] = sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())
        stats.totals[n - 1] = sum(hyp_counts.values())
        stats.ref_totals[n - 1] = sum(ref_counts.values())
    return stats


def _brevity_penalty(hyp_len: int, ref_len: int) -> float:
    if hyp_len == 0:
        return 1.0 if ref_len == 0 else 0.0
    if hyp_len > ref_len:
        return 1.0
    return math.exp(1 - ref_len / hyp_len)


def _score(stats: NgramStats, smooth: bool) -> BleuReport:
    bp = _brevity_penalty(stats.hyp_len, stats.ref_len)
    smooth = smooth and stats.matches[0] > 0

    precisions: list[float | None] = []
    for n in range(MAX_ORDER):
        matches, total = stats.matches[n], stats.totals[n]
        if smooth and n > 0:
            matches, total = matches + 1, total + 1
        if total == 0:
            precisions.append(None if stats.ref_totals[n] == 0 else 0.0)
        else:
            precisions.append(matches / total)

    used = [p for p in precisions if p is not None]
    if not used:
        # both sides are empty
        score = 100.0
    elif any(p == 0 for p in used) or bp == 0:
        score = 0.0
    else:
        log_mean = sum(math.log(p) for p in used) / len(used)
        score = min(100.0, 100.0 * bp * math.exp(log_mean))

    return BleuReport(
        score=score,
        precisions=tuple(precisions),
        brevity_penalty=bp,
        hyp_len=stats.hyp_len,
        ref_len=stats.ref_len,
        smoothing="add-one (n>=2)" if smooth else "none",
    )


def bleu_corpus(hypotheses: Sequence[Sequence[str]], references: Sequence[Sequence[str]]) -> BleuReport:
    """Counts are summed over all pairs before any division."""
    if len(hypotheses) != len(references):
        raise ValueError(f"{len(hypotheses)} hypotheses but {len(references)} references")
    if not hypotheses:
        raise ValueError("cannot score an empty corpus")

    total = NgramStats()
    for hypothesis, reference in zip(hypotheses, references):
        total.merge(sentence_stats(hypothesis, reference))
    return _score(total, smooth=False)


def bleu_sentence(hypothesis: Sequence[str], reference: Sequence[str]) -> BleuReport:
    """Single-pair BLEU with add-one smoothing on orders 2-4 once a unigram matches."""
    if not hypothesis or not reference:
        raise ValueError("hypothesis and reference must both be non-empty")
    return _score(sentence_stats(hypothesis, reference), smooth=True)


def missing_reference_tokens(hypothesis: Sequence[str], reference: Sequence[str]) -> list[str]:
    """Reference tokens, in order, that the hypothesis does not produce."""
    available = Counter(hypothesis)
    missing = []
    for token in reference:
        if available[token] > 0:
            available[token] -= 1
        else:
            missing.append(token)
    return missing


@dataclass(frozen=True)
class SystemComparison:
    baseline: BleuReport
    candidate: BleuReport

    @property
    def delta(self) -> float:
        return self.candidate.score - self.baseline.score


def compare_systems(
    baseline: Sequence[Sequence[str]],
    candidate: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
) -> SystemComparison:
    """Score two outputs against the same references."""
    return SystemComparison(
        baseline=bleu_corpus(baseline, references),
        candidate=bleu_corpus(candidate, references),
    )
