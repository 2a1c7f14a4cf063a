"""Word-boundary marker conventions and token canonicalization.

Subword tokenizers mark "this token starts a new word" in different ways:
SentencePiece-style models prefix a lower-one-eighth-block character,
GPT-2-style byte-level models prefix G-with-dot, and some vocabularies use a
literal leading space.  Comparing vocabularies across tokenizers (overlap
computation, lexicon lookup, common-space lookup) requires mapping all of
these onto a single convention.
"""

from __future__ import annotations

from dataclasses import dataclass

# Canonical leading-boundary marker (the SentencePiece convention).
WORD_MARKER = "▁"

SPECIAL_TOKENS = ("<s>", "</s>", "<pad>", "<unk>")


@dataclass(frozen=True)
class MarkerScheme:
    """Declares how one tokenizer writes its word-boundary marker.

    ``marker`` is the prefix string that means "preceded by a space"; an
    empty marker means the vocabulary carries no boundary information.
    """

    marker: str = WORD_MARKER

    def __post_init__(self):
        if self.marker and len(self.marker) > 1:
            raise ValueError(f"multi-character boundary markers are not supported: {self.marker!r}")


#: Common schemes, by name, for CLI flags.
MARKER_SCHEMES = {
    "sentencepiece": MarkerScheme("▁"),
    "gpt2": MarkerScheme("Ġ"),
    "space": MarkerScheme(" "),
    "none": MarkerScheme(""),
}


def canonicalize_token(token: str, scheme: MarkerScheme = MarkerScheme()) -> str:
    """Rewrite ``token`` so its boundary marker (if any) is ``WORD_MARKER``.

    Tokens without a leading marker pass through unchanged, so the mapping is
    injective per tokenizer and idempotent.
    """
    if scheme.marker and token.startswith(scheme.marker):
        return WORD_MARKER + token[len(scheme.marker):]
    return token


def surface_form(token: str, scheme: MarkerScheme = MarkerScheme()) -> str:
    """The token's text with any leading boundary marker stripped."""
    canon = canonicalize_token(token, scheme)
    if canon.startswith(WORD_MARKER):
        return canon[len(WORD_MARKER):]
    return canon


def is_special(token: str) -> bool:
    return token in SPECIAL_TOKENS
