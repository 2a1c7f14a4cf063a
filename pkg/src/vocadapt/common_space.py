"""Shared embedding space construction.

Source- and target-vocabulary tokens become comparable once both are mapped
into one auxiliary vector space: either an externally trained word-vector
table, or the embedding matrix of an auxiliary multilingual encoder in which
case a token's representation is the unweighted mean of the embeddings of its
auxiliary subword tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bpe import TokenizerModel
from .embeddings import EmbeddingMatrix, WordVectorTable
from .tokens import MarkerScheme, surface_form

_NUM_SPECIALS = 4


@dataclass
class AuxiliaryEncoder:
    """A tokenizer plus the matching embedding matrix of an auxiliary model."""

    tokenizer: TokenizerModel
    embedding: EmbeddingMatrix

    def __post_init__(self):
        if len(self.tokenizer.vocab) != self.embedding.rows.shape[0]:
            raise ValueError(
                f"auxiliary embedding has {self.embedding.rows.shape[0]} rows for a "
                f"vocabulary of {len(self.tokenizer.vocab)}"
            )

    @property
    def dim(self) -> int:
        return self.embedding.dim


def subword_mean_embed(aux: AuxiliaryEncoder, token: str) -> np.ndarray:
    """Mean of the auxiliary embeddings of the token's subword tokens.

    Sequence-boundary specials contribute nothing to the mean; the auxiliary
    tokenization must produce at least one ordinary token.
    """
    if not token:
        raise ValueError("cannot embed an empty token")
    ids = [i for i in aux.tokenizer.encode(token) if i >= _NUM_SPECIALS]
    if not ids:
        raise ValueError(f"auxiliary tokenizer produced no tokens for {token!r}")
    return aux.embedding.rows[ids].astype(np.float64).mean(axis=0)


Provider = WordVectorTable | AuxiliaryEncoder


@dataclass
class CommonSpaceBuild:
    """A vocabulary's representation in the common space.

    ``vectors`` holds one entry per embeddable vocabulary token (keyed by the
    token itself, not its surface form); every other token is in ``missing``.
    ``vocab`` preserves the original token order.
    """

    vocab: list[str]
    vectors: WordVectorTable
    missing: set[str] = field(default_factory=set)

    def __post_init__(self):
        covered = set(self.vectors.entries) | self.missing
        if covered != set(self.vocab) or len(self.vectors.entries) + len(self.missing) != len(self.vocab):
            raise ValueError("vectors and missing must partition the vocabulary")

    @property
    def dim(self) -> int:
        return self.vectors.dim


def build_common_space(
    vocab: list[str],
    provider: Provider,
    scheme: MarkerScheme = MarkerScheme(),
) -> CommonSpaceBuild:
    """Embed each vocabulary token's surface form via ``provider``.

    Word-vector providers simply report absent tokens as missing; the
    downstream transfer decides the fallback.
    """
    if not vocab:
        raise ValueError("vocabulary is empty")
    if len(set(vocab)) != len(vocab):
        raise ValueError("vocabulary tokens must be unique")
    if provider.dim <= 0:
        raise ValueError("provider has zero dimension")
    entries: dict[str, np.ndarray] = {}
    missing: set[str] = set()
    for token in vocab:
        surface = surface_form(token, scheme)
        if not surface:
            missing.add(token)
            continue
        if isinstance(provider, WordVectorTable):
            vec = provider.get(surface)
            if vec is None:
                missing.add(token)
            else:
                entries[token] = np.asarray(vec, dtype=np.float64)
        else:
            entries[token] = subword_mean_embed(provider, surface)
    return CommonSpaceBuild(list(vocab), WordVectorTable(provider.dim, entries), missing)
