"""Embedding storage and file formats.

Two on-disk forms are supported:

* word2vec text: a ``"<rows> <dim>"`` header, then one ``token v1 ... vd``
  line per row.
* WVEC binary: magic ``WVEC``, uint32-LE row count, uint32-LE dim, then
  rows*dim float32-LE values, with a ``<path>.vocab`` sidecar holding one
  (escaped) token per line in row order.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bpe import escape_token, unescape_token

_MAGIC = b"WVEC"


@dataclass
class WordVectorTable:
    """A token -> vector map with a fixed dimension, insertion-ordered."""

    dim: int
    entries: dict[str, np.ndarray]

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("vector dimension must be positive")
        for token, vec in self.entries.items():
            if vec.shape != (self.dim,):
                raise ValueError(f"vector for {token!r} has shape {vec.shape}, expected ({self.dim},)")

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, token: str):
        return self.entries.get(token)


@dataclass
class EmbeddingMatrix:
    """A |V| x d matrix with one row per vocabulary token, in vocab order."""

    vocab: list[str]
    rows: np.ndarray

    def __post_init__(self):
        self.rows = np.ascontiguousarray(self.rows, dtype=np.float32)
        if self.rows.ndim != 2:
            raise ValueError("embedding rows must be a 2-D array")
        if len(self.vocab) != self.rows.shape[0]:
            raise ValueError(
                f"vocab has {len(self.vocab)} tokens but matrix has {self.rows.shape[0]} rows"
            )
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("embedding matrix contains non-finite values")
        self._index = {t: i for i, t in enumerate(self.vocab)}
        if len(self._index) != len(self.vocab):
            raise ValueError("vocabulary tokens must be unique")

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def token_id(self, token: str) -> int:
        return self._index[token]

    def row(self, token: str) -> np.ndarray:
        return self.rows[self._index[token]]

    def to_table(self) -> WordVectorTable:
        return WordVectorTable(self.dim, {t: self.rows[i] for i, t in enumerate(self.vocab)})


# -- word2vec text format ---------------------------------------------------

def load_word_vectors(path) -> WordVectorTable:
    """Read a word2vec text file or a WVEC binary (auto-detected)."""
    path = Path(path)
    with open(path, "rb") as f:
        if f.read(4) == _MAGIC:
            mat = _load_wvec(path)
            return mat.to_table()
    entries: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise ValueError("header must be '<rows> <dim>'")
        try:
            rows, dim = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError(f"malformed header {header!r}")
        if rows < 0 or dim <= 0:
            raise ValueError(f"malformed header {header!r}")
        for lineno, line in enumerate(f, 2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            token, values = parts[0], parts[1:]
            if len(values) != dim:
                raise ValueError(f"line {lineno}: expected {dim} values, found {len(values)}")
            if token in entries:
                raise ValueError(f"line {lineno}: duplicate token {token!r}")
            entries[token] = np.array([float(v) for v in values], dtype=np.float32)
    if len(entries) != rows:
        raise ValueError(f"header declared {rows} rows, file contains {len(entries)}")
    return WordVectorTable(dim, entries)


def write_word_vectors(table: WordVectorTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(table)} {table.dim}\n")
        for token, vec in table.entries.items():
            values = " ".join(f"{float(v):.9g}" for v in vec)
            f.write(f"{token} {values}\n")


# -- WVEC binary format -------------------------------------------------------

def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".vocab")


def save_matrix(mat: EmbeddingMatrix, path) -> None:
    path = Path(path)
    rows = np.ascontiguousarray(mat.rows, dtype="<f4")
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<II", rows.shape[0], rows.shape[1]))
        f.write(rows.tobytes())
    with open(_sidecar(path), "w", encoding="utf-8", newline="\n") as f:
        for token in mat.vocab:
            f.write(escape_token(token) + "\n")


def _load_wvec(path: Path) -> EmbeddingMatrix:
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != _MAGIC:
            raise ValueError(f"{path}: not a WVEC file")
        n_rows, dim = struct.unpack("<II", f.read(8))
        data = f.read()
    expected = n_rows * dim * 4
    if len(data) != expected:
        raise ValueError(f"{path}: expected {expected} payload bytes, found {len(data)}")
    rows = np.frombuffer(data, dtype="<f4").reshape(n_rows, dim)
    vocab = read_vocab(_sidecar(path))
    if len(vocab) != n_rows:
        raise ValueError(f"{path}: sidecar lists {len(vocab)} tokens for {n_rows} rows")
    return EmbeddingMatrix(vocab, rows.copy())


def load_matrix(path) -> EmbeddingMatrix:
    return _load_wvec(Path(path))


def read_vocab(path) -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [unescape_token(line) for line in f.read().splitlines()]


def write_vocab(vocab: list[str], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for token in vocab:
            f.write(escape_token(token) + "\n")
