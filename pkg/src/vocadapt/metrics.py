"""Evaluation arithmetic for few-shot benchmark runs.

Covers the sentence-simplification score (add-F1, keep-F1, delete-precision
over n-grams against input and references), the invalid-prediction rate of
generative outputs, accuracy and F1 confidence intervals, and per-instance
few-shot example sampling.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Sequence

import numpy as np

# -- sentence-simplification score -------------------------------------------

DEFAULT_ORDERS = (4,)
ALL_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class SariBreakdown:
    f1_add: float
    f1_keep: float
    p_del: float

    @property
    def sari(self) -> float:
        return 100.0 * (self.f1_add + self.f1_keep + self.p_del) / 3.0


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _f1(cand_side: Counter, ref_side: Counter) -> float:
    # Nothing to do and nothing done scores a perfect 1.
    if not cand_side and not ref_side:
        return 1.0
    if not cand_side or not ref_side:
        return 0.0
    overlap = sum((cand_side & ref_side).values())
    if overlap == 0:
        return 0.0
    precision = overlap / sum(cand_side.values())
    recall = overlap / sum(ref_side.values())
    return 2.0 * precision * recall / (precision + recall)


def _precision(cand_side: Counter, ref_side: Counter) -> float:
    if not cand_side and not ref_side:
        return 1.0
    if not cand_side:
        return 0.0
    return sum((cand_side & ref_side).values()) / sum(cand_side.values())


def sari(
    source: str,
    candidate: str,
    references: Sequence[str],
    orders: Sequence[int] = DEFAULT_ORDERS,
) -> SariBreakdown:
    """Simplification quality of ``candidate`` against input and references.

    Tokens are lowercased whitespace words.  Per n-gram order: F1 of added
    n-grams (candidate-minus-input vs reference-minus-input), F1 of kept
    n-grams (candidate-and-input vs reference-and-input), and precision of
    deleted n-grams (input-minus-candidate vs input-minus-reference), each on
    multisets.  Multiple references are combined by multiset union, so the
    score is invariant under reference order.  Components are averaged over
    ``orders``.
    """
    if not references:
        raise ValueError("at least one reference is required")
    if not orders:
        raise ValueError("at least one n-gram order is required")
    src_tokens = source.lower().split()
    cand_tokens = candidate.lower().split()
    ref_token_lists = [r.lower().split() for r in references]

    adds, keeps, dels = [], [], []
    for n in orders:
        if n < 1:
            raise ValueError("n-gram orders must be positive")
        inp = _ngram_counts(src_tokens, n)
        cand = _ngram_counts(cand_tokens, n)
        ref: Counter = Counter()
        for toks in ref_token_lists:
            ref |= _ngram_counts(toks, n)
        adds.append(_f1(cand - inp, ref - inp))
        keeps.append(_f1(cand & inp, ref & inp))
        dels.append(_precision(inp - cand, inp - ref))
    m = len(orders)
    return SariBreakdown(sum(adds) / m, sum(keeps) / m, sum(dels) / m)


# -- prediction records -------------------------------------------------------

@dataclass(frozen=True)
class PredictionRecord:
    """One test instance: model output, its parsed label (if any), and gold."""

    id: str
    raw_output: str
    gold: str
    parsed: str | None = None

    @property
    def invalid(self) -> bool:
        return self.parsed is None

    @property
    def correct(self) -> bool:
        return self.parsed is not None and self.parsed == self.gold


def invalid_rate(records: Sequence[PredictionRecord]) -> float:
    """Fraction of predictions that failed the required answer form."""
    if not records:
        raise ValueError("no prediction records")
    return sum(r.invalid for r in records) / len(records)


def valid_records(records: Sequence[PredictionRecord]) -> list[PredictionRecord]:
    valid = [r for r in records if not r.invalid]
    if not valid:
        raise ValueError("no valid predictions to score")
    return valid


# -- confidence intervals -----------------------------------------------------

@dataclass(frozen=True)
class MetricWithCI:
    point: float
    lo: float
    hi: float
    method: str
    level: float = 0.95
    degenerate_resamples: int = 0

    def __str__(self) -> str:
        return f"{self.point:.4f} [{self.lo:.4f}, {self.hi:.4f}]"


def accuracy_with_ci(records: Sequence[PredictionRecord], level: float = 0.95) -> MetricWithCI:
    """Accuracy over valid records with a normal-approximation interval."""
    valid = valid_records(records)
    n = len(valid)
    p = sum(r.correct for r in valid) / n
    z = NormalDist().inv_cdf(0.5 + level / 2.0)
    half = z * (p * (1.0 - p) / n) ** 0.5
    return MetricWithCI(p, max(0.0, p - half), min(1.0, p + half), "normal-approx", level)


def _f1_counts(tp: np.ndarray, fp: np.ndarray, fn: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise F1 from confusion counts; empty denominators give 0, flagged."""
    denom = 2 * tp + fp + fn
    degenerate = denom == 0
    f1 = np.zeros_like(denom, dtype=np.float64)
    ok = ~degenerate
    f1[ok] = 2.0 * tp[ok] / denom[ok]
    return f1, degenerate


def _f1_stats(golds: np.ndarray, preds: np.ndarray, draws: np.ndarray, classes: list) -> tuple[np.ndarray, int]:
    """F1 per resample; for several classes, the unweighted (macro) mean."""
    per_class = []
    degenerate_any = np.zeros(len(draws), dtype=bool)
    for cls in classes:
        g = (golds == cls)[draws]
        p = (preds == cls)[draws]
        tp = (g & p).sum(axis=1)
        fp = (~g & p).sum(axis=1)
        fn = (g & ~p).sum(axis=1)
        f1, degenerate = _f1_counts(tp, fp, fn)
        per_class.append(f1)
        degenerate_any |= degenerate
    return np.mean(per_class, axis=0), int(degenerate_any.sum())


def f1_with_bootstrap_ci(
    records: Sequence[PredictionRecord],
    positive: str | None = None,
    resamples: int = 10_000,
    seed: int = 0,
    level: float = 0.95,
) -> MetricWithCI:
    """Quantile-bootstrap interval for an F1 score over valid records.

    ``positive`` selects single-class F1; otherwise the macro mean over the
    label set of the full sample is bootstrapped.  Intervals are the inverse
    empirical CDF at (1-level)/2 and 1-(1-level)/2.  When every possible
    resample can be enumerated within the ``resamples`` budget (n^n <= B) the
    exact bootstrap distribution is used instead of Monte Carlo draws.
    A resample in which a class is absent from both gold and predicted labels
    scores 0 for that class and is counted in ``degenerate_resamples``.
    """
    valid = valid_records(records)
    n = len(valid)
    if n < 2:
        raise ValueError("bootstrap needs at least two valid records")
    golds = np.array([r.gold for r in valid], dtype=object)
    preds = np.array([r.parsed for r in valid], dtype=object)
    classes = [positive] if positive is not None else sorted(set(golds))

    if n ** n <= resamples:
        draws = np.indices((n,) * n).reshape(n, -1).T
    else:
        rng = np.random.default_rng(seed & (2**64 - 1))
        draws = rng.integers(0, n, size=(resamples, n))
    stats, degenerate = _f1_stats(golds, preds, draws, classes)
    point_arr, _ = _f1_stats(golds, preds, np.arange(n)[None, :], classes)

    alpha = (1.0 - level) / 2.0
    lo, hi = np.quantile(stats, [alpha, 1.0 - alpha], method="inverted_cdf")
    return MetricWithCI(float(point_arr[0]), float(lo), float(hi), "quantile-bootstrap", level, degenerate)


# -- few-shot sampling --------------------------------------------------------

DEFAULT_SHOTS = {
    "boolq": 3,
    "cb": 5,
    "copa": 5,
    "multirc": 2,
    "rte": 3,
    "wsc": 4,
    "si-nli": 5,
}


@dataclass(frozen=True)
class FewShotSpec:
    task: str
    k: int | None = None

    def __post_init__(self):
        if self.k is None:
            default = DEFAULT_SHOTS.get(self.task)
            if default is None:
                raise ValueError(f"no default shot count for task {self.task!r}; pass k")
            object.__setattr__(self, "k", default)
        if self.k < 0:
            raise ValueError("shot count must be >= 0")


def sample_few_shot(pool: Sequence, spec: FewShotSpec, instance_id: str, seed: int) -> list:
    """Draw ``spec.k`` distinct in-context examples for one test instance.

    The generator is seeded by (seed, instance id) so that each test instance
    gets its own reproducible draw.
    """
    k = spec.k
    if k > len(pool):
        raise ValueError(f"cannot sample {k} examples from a pool of {len(pool)}")
    if k == 0:
        return []
    digest = hashlib.blake2b(str(instance_id).encode("utf-8"), digest_size=8).digest()
    entropy = [seed & (2**64 - 1), int.from_bytes(digest, "big")]
    rng = np.random.default_rng(np.random.SeedSequence(entropy))
    idx = rng.choice(len(pool), size=k, replace=False)
    return [pool[i] for i in idx]


# -- answer-form parsing ------------------------------------------------------

@dataclass(frozen=True)
class LabelParser:
    """Maps raw model output to one of a fixed label set, or None if invalid.

    ``exact`` requires the stripped output to equal a label; ``search``
    accepts the earliest whole-word occurrence of any label.
    """

    labels: tuple[str, ...]
    mode: str = "exact"

    def __post_init__(self):
        if self.mode not in ("exact", "search"):
            raise ValueError(f"unknown parser mode {self.mode!r}")
        if not self.labels:
            raise ValueError("label set is empty")

    def __call__(self, raw: str) -> str | None:
        text = raw.strip().casefold()
        if self.mode == "exact":
            for label in self.labels:
                if text == label.casefold():
                    return label
            return None
        best: tuple[int, int] | None = None
        for i, label in enumerate(self.labels):
            m = re.search(rf"(?<!\w){re.escape(label.casefold())}(?!\w)", text)
            if m and (best is None or m.start() < best[0]):
                best = (m.start(), i)
        return self.labels[best[1]] if best else None


def parse_number_set(raw: str) -> str | None:
    """Canonical comma-joined set of answer numbers, e.g. '1,3'."""
    nums = sorted({int(x) for x in re.findall(r"\d+", raw)})
    if not nums:
        return None
    return ",".join(str(x) for x in nums)


TASK_PARSERS: dict[str, Callable[[str], str | None]] = {
    "boolq": LabelParser(("da", "ne"), "search"),
    "rte": LabelParser(("da", "ne"), "search"),
    "wsc": LabelParser(("da", "ne"), "search"),
    "copa": LabelParser(("1", "2"), "search"),
    "cb": LabelParser(("entailment", "neutral", "contradiction"), "search"),
    "si-nli": LabelParser(("entailment", "neutral", "contradiction"), "search"),
    "multirc": parse_number_set,
}
