"""Corpus preparation: artifact cleaning and order-preserving near-deduplication.

Cleaning targets the residue of scanned-PDF extraction: runs of symbols that
are neither ASCII nor letters of any script (box-drawing junk, dingbats,
stray math glyphs).  Deduplication drops text units whose word n-gram overlap
with previously kept text reaches a threshold, keeping first occurrences.
"""

from __future__ import annotations

import hashlib
import json
import re
import unicodedata
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

_WORD_RE = re.compile(r"\S+")
_SLOVENE_ALLOWLIST = frozenset("čžšČŽŠ")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    source: str = ""


@dataclass(frozen=True)
class CleaningConfig:
    """Settings for problematic-run removal.

    A character is problematic when it is non-ASCII, not in ``allowlist``,
    and (with ``letter_scripts_exempt``) not a Unicode letter.  A run of
    whitespace-delimited words made only of problematic characters is removed
    once the words' combined length reaches ``min_run_chars``.
    """

    min_run_chars: int = 5
    allowlist: frozenset[str] = _SLOVENE_ALLOWLIST
    letter_scripts_exempt: bool = True

    def __post_init__(self):
        if self.min_run_chars < 1:
            raise ValueError("min_run_chars must be >= 1")


@dataclass(frozen=True)
class DedupConfig:
    ngram_order: int = 9
    duplicate_threshold: float = 0.9
    unit: str = "paragraph"  # or "document"

    def __post_init__(self):
        if self.ngram_order < 1:
            raise ValueError("ngram_order must be >= 1")
        if not 0.0 <= self.duplicate_threshold <= 1.0:
            raise ValueError("duplicate_threshold must be in [0, 1]")
        if self.unit not in ("paragraph", "document"):
            raise ValueError(f"unknown dedup unit: {self.unit!r}")


@dataclass
class PipelineReport:
    docs_in: int = 0
    docs_kept: int = 0
    chars_removed: int = 0
    duplicate_units_dropped: int = 0
    units_total: int = 0
    units_below_ngram: int = 0  # units too short to form a single n-gram

    def lines(self) -> list[str]:
        return [f"{k} = {v}" for k, v in vars(self).items()]


def _is_problematic(ch: str, cfg: CleaningConfig) -> bool:
    if ord(ch) < 128:
        return False
    if ch in cfg.allowlist:
        return False
    if cfg.letter_scripts_exempt and unicodedata.category(ch).startswith("L"):
        return False
    return True


def scan_problematic_runs(text: str, cfg: CleaningConfig = CleaningConfig()) -> list[tuple[int, int]]:
    """Locate runs of fully-problematic words totalling >= ``min_run_chars`` chars.

    Returns disjoint, sorted ``(start, end)`` spans.  A span covers whole
    words, from the first problematic word of the run to the end of the last,
    including any whitespace between them (but not around them).
    """
    spans: list[tuple[int, int]] = []
    run_start = run_end = run_len = 0
    in_run = False

    def flush():
        nonlocal in_run
        if in_run and run_len >= cfg.min_run_chars:
            spans.append((run_start, run_end))
        in_run = False

    for m in _WORD_RE.finditer(text):
        word = m.group()
        if all(_is_problematic(c, cfg) for c in word):
            if not in_run:
                run_start, run_len = m.start(), 0
                in_run = True
            run_end = m.end()
            run_len += len(word)
        else:
            flush()
    flush()
    return spans


def clean_text(text: str, cfg: CleaningConfig = CleaningConfig()) -> tuple[str, int]:
    """Remove problematic runs from ``text``; returns (cleaned, chars removed).

    Each removed span absorbs one adjacent whitespace character so word
    separation collapses to a single separator; the result is idempotent.
    """
    spans = scan_problematic_runs(text, cfg)
    if not spans:
        return text, 0
    removed = 0
    out = text
    for start, end in reversed(spans):
        # Runs consist of whole words, so any neighbour is whitespace.
        if start > 0:
            start -= 1
        elif end < len(out):
            end += 1
        out = out[:start] + out[end:]
        removed += end - start
    return out, removed


def clean_document(doc: Document, cfg: CleaningConfig = CleaningConfig()) -> Document:
    cleaned, _ = clean_text(doc.text, cfg)
    if cleaned == doc.text:
        return doc
    return replace(doc, text=cleaned)


def _shingle(tokens: Sequence[str], i: int, n: int) -> int:
    h = hashlib.blake2b("\x1f".join(tokens[i:i + n]).encode("utf-8"), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def ngram_fingerprints(tokens: Sequence[str], n: int) -> set[int]:
    """64-bit fingerprints of the lowercased token n-grams of one unit."""
    lowered = [t.lower() for t in tokens]
    return {_shingle(lowered, i, n) for i in range(len(lowered) - n + 1)}


def duplicate_fraction(tokens: Sequence[str], n: int, seen: set[int]) -> tuple[float, set[int]]:
    """Fraction of the unit's distinct n-grams already in ``seen``.

    Units with no n-grams (fewer than ``n`` tokens) count as 0% duplicated.
    Also returns the unit's fingerprints so the caller can extend ``seen``.
    """
    grams = ngram_fingerprints(tokens, n)
    if not grams:
        return 0.0, grams
    return len(grams & seen) / len(grams), grams


def split_paragraphs(text: str) -> list[str]:
    parts = re.split(r"\n\s*\n", text)
    return [p for p in parts if p.strip()]


def dedup_corpus(
    docs: Sequence[Document], cfg: DedupConfig = DedupConfig()
) -> tuple[list[Document], PipelineReport]:
    """Keep-first near-deduplication over an ordered corpus.

    Units (paragraphs or whole documents, per ``cfg.unit``) are processed in
    input order; a unit is dropped iff the fraction of its n-grams already
    seen in previously kept units is >= ``cfg.duplicate_threshold``.  With
    paragraph granularity a document survives if any of its paragraphs do.
    """
    if not docs:
        raise ValueError("dedup_corpus requires a nonempty corpus")
    report = PipelineReport(docs_in=len(docs))
    seen: set[int] = set()
    kept_docs: list[Document] = []

    for doc in docs:
        units = [doc.text] if cfg.unit == "document" else split_paragraphs(doc.text)
        kept_units = []
        for unit in units:
            report.units_total += 1
            tokens = unit.split()
            fraction, grams = duplicate_fraction(tokens, cfg.ngram_order, seen)
            if not grams:
                report.units_below_ngram += 1
            if grams and fraction >= cfg.duplicate_threshold:
                report.duplicate_units_dropped += 1
                continue
            seen.update(grams)
            kept_units.append(unit)
        if not kept_units:
            continue
        if cfg.unit == "document" or len(kept_units) == len(units):
            kept_docs.append(doc)
        else:
            kept_docs.append(replace(doc, text="\n\n".join(kept_units)))
        report.docs_kept += 1
    return kept_docs, report


# -- corpus files -------------------------------------------------------------
#
# A corpus directory holds plain-text files (one document each) and/or .jsonl
# files of {"id", "source", "text"} records.  Files are read in sorted order
# so downstream keep-first semantics are reproducible.

@dataclass
class CorpusFile:
    relpath: str
    kind: str  # "text" or "jsonl"
    docs: list[Document]


def read_corpus(path) -> list[CorpusFile]:
    path = Path(path)
    if path.is_file():
        return [_read_corpus_file(path, path.name)]
    if not path.is_dir():
        raise OSError(f"corpus path {path} does not exist")
    files = sorted(
        p for p in path.rglob("*") if p.is_file() and p.suffix in (".txt", ".jsonl")
    )
    if not files:
        raise ValueError(f"no .txt or .jsonl files under {path}")
    out = [_read_corpus_file(p, str(p.relative_to(path))) for p in files]
    seen_ids: set[str] = set()
    for cf in out:
        for doc in cf.docs:
            if doc.id in seen_ids:
                raise ValueError(f"duplicate document id {doc.id!r}")
            seen_ids.add(doc.id)
    return out


def _read_corpus_file(p: Path, relpath: str) -> CorpusFile:
    if p.suffix == ".jsonl":
        docs = []
        with open(p, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    docs.append(Document(str(rec["id"]), rec["text"], rec.get("source", "")))
                except (json.JSONDecodeError, KeyError, TypeError) as e:
                    raise ValueError(f"{p}:{lineno}: bad record ({e})")
        return CorpusFile(relpath, "jsonl", docs)
    text = p.read_text(encoding="utf-8")
    return CorpusFile(relpath, "text", [Document(relpath, text, p.stem)])


def write_corpus(files: list[CorpusFile], out_dir) -> None:
    out_dir = Path(out_dir)
    for cf in files:
        dest = out_dir / cf.relpath
        dest.parent.mkdir(parents=True, exist_ok=True)
        if cf.kind == "jsonl":
            with open(dest, "w", encoding="utf-8", newline="\n") as f:
                for doc in cf.docs:
                    rec = {"id": doc.id, "source": doc.source, "text": doc.text}
                    f.write(json.dumps(rec, ensure_ascii=False) + "\n")
        else:
            if not cf.docs:
                continue
            dest.write_text(cf.docs[0].text, encoding="utf-8")


def all_documents(files: list[CorpusFile]) -> list[Document]:
    return [doc for cf in files for doc in cf.docs]
