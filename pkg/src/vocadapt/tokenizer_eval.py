"""Vocabulary-quality metrics: fertility histogram, multi-token rate,
lexicon coverage, and cross-model corpus token accounting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bpe import BYTE_TOKENS, TokenizerModel
from .tokens import is_special, surface_form

_N_BUCKETS = 10


@dataclass
class FertilityHistogram:
    """Counts of words written with 1, 2, ..., 9, and 10-or-more tokens."""

    buckets: list[int]
    total_words: int

    def __post_init__(self):
        if len(self.buckets) != _N_BUCKETS:
            raise ValueError(f"expected {_N_BUCKETS} buckets")
        if sum(self.buckets) != self.total_words:
            raise ValueError("bucket counts must sum to total_words")


@dataclass(frozen=True)
class LexiconCoverage:
    vocab_size: int
    in_lexicon: int

    @property
    def fraction(self) -> float:
        return self.in_lexicon / self.vocab_size


def fertility_histogram(model: TokenizerModel, words: Iterable[str]) -> FertilityHistogram:
    """Bucket each word by how many tokens the model needs to write it."""
    buckets = [0] * _N_BUCKETS
    total = 0
    for word in words:
        n = len(model.encode(word))
        buckets[min(n, _N_BUCKETS) - 1] += 1
        total += 1
    if total == 0:
        raise ValueError("fertility histogram needs a nonempty corpus")
    return FertilityHistogram(buckets, total)


def multi_token_rate(hist: FertilityHistogram) -> float:
    """Fraction of words requiring two or more tokens; lower is better."""
    if hist.total_words == 0:
        raise ValueError("histogram has no words")
    return (hist.total_words - hist.buckets[0]) / hist.total_words


def lexicon_coverage(model: TokenizerModel, lexicon: set[str], fold_case: bool = False) -> LexiconCoverage:
    """How many vocabulary tokens are real words of the target language.

    Specials and byte-fallback tokens are infrastructure, not vocabulary, and
    are excluded from both numerator and denominator.  Tokens are compared by
    their surface form (boundary marker stripped), case-sensitively unless
    ``fold_case`` is set.
    """
    if not lexicon:
        raise ValueError("lexicon is empty")
    if fold_case:
        lexicon = {w.casefold() for w in lexicon}
    byte_tokens = set(BYTE_TOKENS) if model.byte_fallback else set()
    size = hits = 0
    for token in model.vocab:
        if is_special(token) or token in byte_tokens:
            continue
        surface = surface_form(token)
        if not surface:  # the bare boundary marker is infrastructure too
            continue
        size += 1
        if fold_case:
            surface = surface.casefold()
        if surface in lexicon:
            hits += 1
    if size == 0:
        raise ValueError("model has no non-special vocabulary tokens")
    return LexiconCoverage(vocab_size=size, in_lexicon=hits)


@dataclass(frozen=True)
class TokenReport:
    count_a: int
    count_b: int

    @property
    def ratio(self) -> float:
        if self.count_b == 0:
            raise ValueError("second model produced zero tokens")
        return self.count_a / self.count_b


def corpus_token_report(
    texts: Iterable[str], model_a: TokenizerModel, model_b: TokenizerModel
) -> TokenReport:
    """Total token counts for the same corpus under two tokenizers."""
    count_a = count_b = 0
    seen = False
    for text in texts:
        seen = True
        count_a += len(model_a.encode(text))
        count_b += len(model_b.encode(text))
    if not seen:
        raise ValueError("token report needs a nonempty corpus")
    return TokenReport(count_a, count_b)
