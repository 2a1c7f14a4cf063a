"""Byte-pair-encoding tokenizer: training, encoding, decoding, model files.

Training is the classic greedy procedure: words are pre-segmented on spaces
(a word preceded by a space carries a leading boundary marker), then the most
frequent adjacent symbol pair is merged until the vocabulary is full or no
pair repeats.  Ties are broken by the lexicographically smallest merged
string, so training is fully deterministic.

Encoding replays the learned merges in order.  With byte fallback enabled
(the default) characters outside the learned alphabet are written as raw
UTF-8 byte tokens, which makes ``decode(encode(text)) == text`` hold for
arbitrary input and leaves ``<unk>`` reserved but unused.
"""

from __future__ import annotations

import heapq
import re
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .tokens import SPECIAL_TOKENS, WORD_MARKER

BYTE_TOKENS = tuple(f"<0x{b:02X}>" for b in range(256))
_BYTE_TOKEN_RE = re.compile(r"^<0x[0-9A-F]{2}>$")
_NUM_SPECIALS = len(SPECIAL_TOKENS)


@dataclass(frozen=True)
class BpeTrainConfig:
    vocab_size: int
    character_coverage: float = 1.0
    byte_fallback: bool = True

    def __post_init__(self):
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be positive")
        if not 0.0 < self.character_coverage <= 1.0:
            raise ValueError("character_coverage must be in (0, 1]")


def _split_pieces(text: str) -> Iterator[tuple[bool, str]]:
    """Yield (marked, word) pieces; a word is marked iff a space precedes it."""
    for i, seg in enumerate(text.split(" ")):
        if i == 0:
            if seg:
                yield False, seg
        else:
            yield True, seg


@dataclass(eq=False)
class TokenizerModel:
    """An ordered vocabulary plus the merge list that produced it.

    Ids 0-3 are the fixed specials ``<s> </s> <pad> <unk>``; with byte
    fallback the 256 byte tokens follow at ids 4-259.
    """

    vocab: list[str]
    merges: list[tuple[str, str]]

    def __post_init__(self):
        if self.vocab[:_NUM_SPECIALS] != list(SPECIAL_TOKENS):
            raise ValueError("vocabulary must start with the four special tokens")
        if len(set(self.vocab)) != len(self.vocab):
            raise ValueError("vocabulary entries must be unique")
        self._token_to_id = {t: i for i, t in enumerate(self.vocab)}
        for left, right in self.merges:
            merged = left + right
            if merged not in self._token_to_id:
                raise ValueError(f"merge output {merged!r} missing from vocabulary")
            if merged in SPECIAL_TOKENS:
                raise ValueError(f"merge output {merged!r} collides with a special token")
        self.byte_fallback = tuple(self.vocab[_NUM_SPECIALS:_NUM_SPECIALS + 256]) == BYTE_TOKENS
        # The marker is prepended structurally; a literal marker character in
        # text must byte-fallback or decoding would turn it into a space.
        self._alphabet = {t for t in self.vocab if len(t) == 1 and t != WORD_MARKER}
        self._merge_ranks = {pair: rank for rank, pair in enumerate(self.merges)}
        self._piece_cache: dict[tuple[bool, str], list[int]] = {}

    # -- encoding ---------------------------------------------------------

    def encode(self, text: str) -> list[int]:
        """Token ids for ``text``; empty input gives an empty sequence."""
        ids: list[int] = []
        cache = self._piece_cache
        for piece in _split_pieces(text):
            out = cache.get(piece)
            if out is None:
                syms = self._apply_merges(self._piece_symbols(*piece))
                out = [self._token_to_id[s] for s in syms]
                cache[piece] = out
            ids.extend(out)
        return ids

    def _piece_symbols(self, marked: bool, word: str) -> list[str]:
        return _word_symbols(marked, word, self._alphabet, self.byte_fallback)

    def _apply_merges(self, syms: list[str]) -> list[str]:
        ranks = self._merge_ranks
        while len(syms) > 1:
            best = None
            best_rank = len(ranks)
            for pair in zip(syms, syms[1:]):
                rank = ranks.get(pair)
                if rank is not None and rank < best_rank:
                    best, best_rank = pair, rank
            if best is None:
                break
            syms = _replace_pair(syms, best)
        return syms

    def decode(self, ids: Iterable[int]) -> str:
        """Inverse of encode; specials decode to the empty string."""
        parts: list[str] = []
        pending = bytearray()

        def flush():
            if pending:
                parts.append(pending.decode("utf-8", errors="replace"))
                pending.clear()

        for i in ids:
            if not 0 <= i < len(self.vocab):
                raise ValueError(f"token id {i} out of range for vocabulary of {len(self.vocab)}")
            if i < _NUM_SPECIALS:
                continue
            if self.byte_fallback and i < _NUM_SPECIALS + 256:
                pending.append(i - _NUM_SPECIALS)
                continue
            flush()
            parts.append(self.vocab[i].replace(WORD_MARKER, " "))
        flush()
        return "".join(parts)

    # -- persistence ------------------------------------------------------

    def dumps(self) -> str:
        lines = ["[vocab]"]
        lines += [escape_token(t) for t in self.vocab]
        lines.append("[merges]")
        lines += [f"{escape_token(l)} {escape_token(r)}" for l, r in self.merges]
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.dumps())

    @classmethod
    def loads(cls, data: str) -> "TokenizerModel":
        vocab: list[str] = []
        merges: list[tuple[str, str]] = []
        section = None
        for lineno, line in enumerate(data.splitlines(), 1):
            if line == "[vocab]":
                section = "vocab"
            elif line == "[merges]":
                section = "merges"
            elif section == "vocab":
                vocab.append(unescape_token(line))
            elif section == "merges":
                try:
                    left, right = line.split(" ")
                except ValueError:
                    raise ValueError(f"line {lineno}: merge must be two space-separated tokens")
                merges.append((unescape_token(left), unescape_token(right)))
            elif line.strip():
                raise ValueError(f"line {lineno}: content before [vocab] section")
        return cls(vocab, merges)

    @classmethod
    def load(cls, path) -> "TokenizerModel":
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def _word_symbols(marked: bool, word: str, alphabet: set[str], byte_fallback: bool) -> list[str]:
    syms = [WORD_MARKER] if marked else []
    for ch in word:
        if ch in alphabet:
            syms.append(ch)
        elif byte_fallback:
            syms.extend(BYTE_TOKENS[b] for b in ch.encode("utf-8"))
        else:
            syms.append("<unk>")
    return syms


def _replace_pair(syms: list[str], pair: tuple[str, str]) -> list[str]:
    left, right = pair
    merged = left + right
    out = []
    i = 0
    n = len(syms)
    while i < n:
        if i + 1 < n and syms[i] == left and syms[i + 1] == right:
            out.append(merged)
            i += 2
        else:
            out.append(syms[i])
            i += 1
    return out


def _coverage_alphabet(char_counts: Counter, coverage: float) -> set[str]:
    if coverage >= 1.0:
        return set(char_counts)
    total = sum(char_counts.values())
    kept: set[str] = set()
    covered = 0
    for ch, cnt in sorted(char_counts.items(), key=lambda kv: (-kv[1], kv[0])):
        if covered >= coverage * total:
            break
        kept.add(ch)
        covered += cnt
    return kept


def train_bpe(corpus: Iterable[str], cfg: BpeTrainConfig) -> TokenizerModel:
    """Learn a BPE model from an iterator of text strings.

    Text is NFC-normalized before segmentation.  Whitespace characters and
    the literal boundary-marker character never enter the alphabet (they are
    byte-encoded), so no learned token contains either.
    """
    word_counts: Counter = Counter()
    for text in corpus:
        word_counts.update(_split_pieces(unicodedata.normalize("NFC", text)))
    if not word_counts:
        raise ValueError("training corpus is empty")

    char_counts: Counter = Counter()
    for (_, word), cnt in word_counts.items():
        for ch in word:
            if not ch.isspace() and ch != WORD_MARKER:
                char_counts[ch] += cnt
    alphabet = _coverage_alphabet(char_counts, cfg.character_coverage)

    vocab = list(SPECIAL_TOKENS)
    if cfg.byte_fallback:
        vocab.extend(BYTE_TOKENS)
    vocab.extend(sorted(alphabet | {WORD_MARKER}))
    if cfg.vocab_size < len(vocab):
        raise ValueError(
            f"vocab_size {cfg.vocab_size} is smaller than specials + alphabet ({len(vocab)})"
        )
    vocab_set = set(vocab)

    words = [
        [_word_symbols(marked, word, alphabet, cfg.byte_fallback), cnt]
        for (marked, word), cnt in word_counts.items()
    ]

    unmergeable = set(SPECIAL_TOKENS)
    if cfg.byte_fallback:
        unmergeable.update(BYTE_TOKENS)

    pair_counts: dict[tuple[str, str], int] = defaultdict(int)
    pair_words: dict[tuple[str, str], set[int]] = defaultdict(set)
    for wi, (syms, cnt) in enumerate(words):
        for pair in zip(syms, syms[1:]):
            if pair[0] not in unmergeable and pair[1] not in unmergeable:
                pair_counts[pair] += cnt
                pair_words[pair].add(wi)

    # Lazy max-heap keyed on (count, smallest merged string); entries are
    # validated against pair_counts at pop time.
    heap = [(-c, l + r, l, r) for (l, r), c in pair_counts.items()]
    heapq.heapify(heap)

    merges: list[tuple[str, str]] = []
    while len(vocab) < cfg.vocab_size and heap:
        neg_count, merged, left, right = heapq.heappop(heap)
        pair = (left, right)
        if pair_counts.get(pair, 0) != -neg_count:
            continue
        if -neg_count < 2:
            break
        # Reserved strings must never become ordinary tokens, or decoding
        # would misread them as specials / raw bytes.
        if merged in SPECIAL_TOKENS or _BYTE_TOKEN_RE.match(merged):
            continue

        touched: set[tuple[str, str]] = set()
        for wi in sorted(pair_words.pop(pair, ())):
            syms, cnt = words[wi]
            new_syms = _replace_pair(syms, pair)
            if len(new_syms) == len(syms):
                continue
            for p in zip(syms, syms[1:]):
                if p[0] not in unmergeable and p[1] not in unmergeable:
                    pair_counts[p] -= cnt
                    touched.add(p)
            for p in zip(new_syms, new_syms[1:]):
                if p[0] not in unmergeable and p[1] not in unmergeable:
                    pair_counts[p] += cnt
                    pair_words[p].add(wi)
                    touched.add(p)
            words[wi][0] = new_syms
        for p in touched:
            count = pair_counts[p]
            if count > 0:
                heapq.heappush(heap, (-count, p[0] + p[1], p[0], p[1]))
            else:
                pair_counts.pop(p, None)
                pair_words.pop(p, None)

        merges.append(pair)
        if merged not in vocab_set:
            vocab.append(merged)
            vocab_set.add(merged)

    return TokenizerModel(vocab, merges)


# "[" is escaped so no token line can look like a section header.
_ESCAPES = {"\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t", " ": "\\s", "[": "\\["}
_UNESCAPES = {"\\": "\\", "n": "\n", "r": "\r", "t": "\t", "s": " ", "[": "["}


def escape_token(token: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in token)


def unescape_token(text: str) -> str:
    out = []
    it = iter(text)
    for ch in it:
        if ch == "\\":
            try:
                out.append(_UNESCAPES[next(it)])
            except (StopIteration, KeyError):
                raise ValueError(f"bad escape in token {text!r}")
        else:
            out.append(ch)
    return "".join(out)
