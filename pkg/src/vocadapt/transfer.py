"""Target-vocabulary embedding initialization from a source model.

Three strategies:

* neighbor-weighted ("wechsel"): each target token's embedding is a
  softmax-weighted convex combination of its k nearest source tokens, with
  similarity measured by cosine in a common space over both vocabularies.
* overlap-anchored ("focus"): tokens present in both vocabularies keep their
  source embedding verbatim; every other token becomes a sparsemax-weighted
  convex combination of the overlap tokens, using similarities measured in a
  common space over the target vocabulary only.
* "random": seeded i.i.d. normal rows.

Tokens the common space cannot represent fall back to seeded normal rows
matched to the source matrix's mean and standard deviation (or raise, per
configuration).  The source model ties its input embedding and output
projection, so the transferred matrix can be emitted for both roles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .common_space import CommonSpaceBuild
from .embeddings import EmbeddingMatrix
from .tokens import SPECIAL_TOKENS, MarkerScheme, canonicalize_token

_METHODS = ("wechsel", "focus", "random")
_FALLBACKS = ("random-matched-moments", "error")

# Targets are processed in blocks so similarity matrices stay small.
_BLOCK = 1024


@dataclass(frozen=True)
class TransferConfig:
    method: str
    k: int = 10
    temperature: float = 0.1
    tied: bool = False
    seed: int = 0
    fallback: str = "random-matched-moments"
    src_scheme: MarkerScheme = MarkerScheme()
    tgt_scheme: MarkerScheme = MarkerScheme()

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown transfer method {self.method!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if self.fallback not in _FALLBACKS:
            raise ValueError(f"unknown fallback policy {self.fallback!r}")


@dataclass
class TransferWeights:
    """Convex-combination provenance: target id -> [(source id, weight)].

    Fallback rows have no entry; copied rows carry a single unit weight.
    """

    by_target: dict[int, list[tuple[int, float]]] = field(default_factory=dict)


@dataclass
class TransferReport:
    method: str
    overlap_size: int = 0
    fallback_count: int = 0
    diagnostics: dict[str, int] = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [
            f"method = {self.method}",
            f"overlap_size = {self.overlap_size}",
            f"fallback_count = {self.fallback_count}",
        ]
        out += [f"{k} = {v}" for k, v in sorted(self.diagnostics.items())]
        return out


def cosine_similarity(u, v) -> float:
    """uᵀv / (‖u‖·‖v‖); raises on zero-norm input."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity is undefined for zero vectors")
    return float(u @ v / (nu * nv))


def sparsemax(z) -> np.ndarray:
    """Euclidean projection of ``z`` onto the probability simplex."""
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise ValueError("sparsemax expects a nonempty 1-D vector")
    if not np.all(np.isfinite(z)):
        raise ValueError("sparsemax input must be finite")
    return _sparsemax_rows(z[None, :])[0]


def _sparsemax_rows(z: np.ndarray) -> np.ndarray:
    """Row-wise simplex projection via the sorted-threshold closed form."""
    srt = np.sort(z, axis=1)[:, ::-1]
    cumsum = np.cumsum(srt, axis=1)
    ks = np.arange(1, z.shape[1] + 1, dtype=np.float64)
    support = 1.0 + ks * srt > cumsum
    sizes = np.count_nonzero(support, axis=1)
    tau = (cumsum[np.arange(len(z)), sizes - 1] - 1.0) / sizes
    return np.maximum(z - tau[:, None], 0.0)


def random_init(
    vocab: list[str], dim: int, seed: int, mean: float = 0.0, std: float = 0.02
) -> EmbeddingMatrix:
    """Seeded i.i.d. normal embedding rows."""
    if dim <= 0:
        raise ValueError("dim must be positive")
    if std < 0:
        raise ValueError("std must be >= 0")
    rng = np.random.default_rng(seed)
    rows = rng.normal(mean, std, size=(len(vocab), dim))
    return EmbeddingMatrix(list(vocab), rows.astype(np.float32))


def apply_tied(result: EmbeddingMatrix, cfg: TransferConfig, expected_dim: int | None = None) -> EmbeddingMatrix:
    """Output-projection matrix for a weight-tied model: a copy of the rows."""
    if not cfg.tied:
        raise ValueError("apply_tied called with cfg.tied disabled")
    if expected_dim is not None and expected_dim != result.dim:
        raise ValueError(
            f"tied output layer expects dim {expected_dim}, embedding has {result.dim}"
        )
    return EmbeddingMatrix(list(result.vocab), result.rows.copy())


def _space_vectors(space: CommonSpaceBuild, tokens: list[str]) -> tuple[list[int], np.ndarray]:
    """Positions (into ``tokens``) with usable vectors, and the unit-norm matrix.

    Zero-norm vectors are unusable for cosine similarity and are skipped.
    """
    positions: list[int] = []
    vecs: list[np.ndarray] = []
    for i, tok in enumerate(tokens):
        vec = space.vectors.get(tok)
        if vec is None:
            continue
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            continue
        positions.append(i)
        vecs.append(np.asarray(vec, dtype=np.float64) / norm)
    if not positions:
        return [], np.empty((0, space.dim))
    return positions, np.stack(vecs)


def _finalize(
    tgt_vocab: list[str],
    dim: int,
    filled: dict[int, np.ndarray],
    report: TransferReport,
    src: EmbeddingMatrix,
    cfg: TransferConfig,
) -> EmbeddingMatrix:
    """Assemble the output matrix, drawing fallback rows for unfilled slots."""
    pending = [i for i in range(len(tgt_vocab)) if i not in filled]
    report.fallback_count = len(pending)
    if pending:
        if cfg.fallback == "error":
            names = ", ".join(repr(tgt_vocab[i]) for i in pending[:10])
            raise ValueError(
                f"{len(pending)} target tokens have no common-space vector "
                f"(fallback policy is 'error'): {names}"
            )
        mean = float(src.rows.mean())
        std = float(src.rows.std())
        rng = np.random.default_rng(cfg.seed)
        draws = rng.normal(mean, std, size=(len(pending), dim))
        for row, i in enumerate(pending):
            filled[i] = draws[row].astype(np.float32)
    rows = np.empty((len(tgt_vocab), dim), dtype=np.float32)
    for i in range(len(tgt_vocab)):
        rows[i] = filled[i]
    return EmbeddingMatrix(list(tgt_vocab), rows)


def _copy_specials(
    tgt_vocab: list[str],
    src: EmbeddingMatrix,
    filled: dict[int, np.ndarray],
    weights: TransferWeights,
) -> int:
    copied = 0
    for i, tok in enumerate(tgt_vocab):
        if tok in SPECIAL_TOKENS and tok in src:
            sid = src.token_id(tok)
            filled[i] = src.rows[sid].copy()
            weights.by_target[i] = [(sid, 1.0)]
            copied += 1
    return copied


def _overlap_map(
    src_vocab: list[str], tgt_vocab: list[str], cfg: TransferConfig
) -> dict[str, int]:
    """Canonical form -> source id, for non-special source tokens."""
    canon: dict[str, int] = {}
    for sid, tok in enumerate(src_vocab):
        if tok in SPECIAL_TOKENS:
            continue
        c = canonicalize_token(tok, cfg.src_scheme)
        if c in canon:
            raise ValueError(f"source canonicalization is not injective: {tok!r} -> {c!r}")
        canon[c] = sid
    return canon


def wechsel_transfer(
    src: EmbeddingMatrix,
    ws: CommonSpaceBuild,
    wt: CommonSpaceBuild,
    cfg: TransferConfig,
) -> tuple[EmbeddingMatrix, TransferWeights, TransferReport]:
    """Nearest-neighbor softmax transfer over a joint common space.

    For each target token with a common-space vector, the k most cosine-similar
    source tokens (ties: higher similarity, then lower source id) are combined
    with softmax weights at ``cfg.temperature``.
    """
    if cfg.method != "wechsel":
        raise ValueError("config method must be 'wechsel'")
    if ws.dim != wt.dim:
        raise ValueError(f"common-space dims differ: {ws.dim} vs {wt.dim}")
    tgt_vocab = wt.vocab
    report = TransferReport(method="wechsel")
    weights = TransferWeights()
    filled: dict[int, np.ndarray] = {}
    report.diagnostics["specials_copied"] = _copy_specials(tgt_vocab, src, filled, weights)
    report.overlap_size = _shared_canonical_count(src.vocab, tgt_vocab, cfg)

    cand_src = [t for t in src.vocab if t not in SPECIAL_TOKENS]
    cand_pos, cand_mat = _space_vectors(ws, cand_src)
    if not cand_pos:
        raise ValueError("no source token has a common-space vector")
    cand_ids = np.array([src.token_id(cand_src[p]) for p in cand_pos])

    tgt_targets = [
        (i, t) for i, t in enumerate(tgt_vocab) if i not in filled
    ]
    pos, tgt_mat = _space_vectors(wt, [t for _, t in tgt_targets])
    k = min(cfg.k, len(cand_ids))
    src64 = src.rows.astype(np.float64)
    for start in range(0, len(pos), _BLOCK):
        block = pos[start:start + _BLOCK]
        sims = tgt_mat[start:start + _BLOCK] @ cand_mat.T
        # Stable sort on descending similarity keeps ascending source id on ties.
        order = np.argsort(-sims, axis=1, kind="stable")[:, :k]
        for r, p in enumerate(block):
            tgt_index = tgt_targets[p][0]
            top = order[r]
            s = sims[r, top] / cfg.temperature
            w = np.exp(s - s.max())
            w /= w.sum()
            ids = cand_ids[top]
            filled[tgt_index] = (w @ src64[ids]).astype(np.float32)
            weights.by_target[tgt_index] = list(zip(ids.tolist(), w.tolist()))
    report.diagnostics["transferred"] = len(pos)
    report.diagnostics["k"] = k
    matrix = _finalize(tgt_vocab, src.dim, filled, report, src, cfg)
    return matrix, weights, report


def focus_transfer(
    src: EmbeddingMatrix,
    wt: CommonSpaceBuild,
    cfg: TransferConfig,
) -> tuple[EmbeddingMatrix, TransferWeights, TransferReport]:
    """Overlap-anchored transfer using a target-side common space only.

    Overlap tokens (canonical forms shared by both vocabularies) are copied
    bit-for-bit; each remaining token gets sparsemax weights over its
    similarities to the overlap and the corresponding convex combination.
    """
    if cfg.method != "focus":
        raise ValueError("config method must be 'focus'")
    tgt_vocab = wt.vocab
    report = TransferReport(method="focus")
    weights = TransferWeights()
    filled: dict[int, np.ndarray] = {}
    report.diagnostics["specials_copied"] = _copy_specials(tgt_vocab, src, filled, weights)

    canon_src = _overlap_map(src.vocab, tgt_vocab, cfg)
    overlap_tokens: list[str] = []
    additional: list[tuple[int, str]] = []
    seen_canon: set[str] = set()
    for i, tok in enumerate(tgt_vocab):
        if i in filled:
            continue
        c = canonicalize_token(tok, cfg.tgt_scheme)
        if c in seen_canon:
            raise ValueError(f"target canonicalization is not injective: {tok!r} -> {c!r}")
        seen_canon.add(c)
        sid = canon_src.get(c)
        if sid is None:
            additional.append((i, tok))
        else:
            filled[i] = src.rows[sid].copy()
            weights.by_target[i] = [(sid, 1.0)]
            overlap_tokens.append(tok)
    report.overlap_size = len(overlap_tokens)
    if not overlap_tokens:
        raise ValueError(
            "source and target vocabularies share no tokens; check boundary-marker "
            f"schemes (source marker {cfg.src_scheme.marker!r}, "
            f"target marker {cfg.tgt_scheme.marker!r})"
        )

    anchor_pos, anchor_mat = _space_vectors(wt, overlap_tokens)
    anchor_ids = np.array(
        [canon_src[canonicalize_token(overlap_tokens[p], cfg.tgt_scheme)] for p in anchor_pos]
    )
    report.diagnostics["anchors_with_vectors"] = len(anchor_pos)

    add_pos, add_mat = _space_vectors(wt, [t for _, t in additional])
    transferred = 0
    if len(anchor_pos) and len(add_pos):
        src64 = src.rows.astype(np.float64)
        anchors64 = src64[anchor_ids]
        for start in range(0, len(add_pos), _BLOCK):
            block = add_pos[start:start + _BLOCK]
            sims = add_mat[start:start + _BLOCK] @ anchor_mat.T
            w_rows = _sparsemax_rows(sims)
            combo = w_rows @ anchors64
            for r, p in enumerate(block):
                tgt_index = additional[p][0]
                filled[tgt_index] = combo[r].astype(np.float32)
                nz = np.nonzero(w_rows[r])[0]
                weights.by_target[tgt_index] = [
                    (int(anchor_ids[j]), float(w_rows[r, j])) for j in nz
                ]
                transferred += 1
    report.diagnostics["transferred"] = transferred
    matrix = _finalize(tgt_vocab, src.dim, filled, report, src, cfg)
    return matrix, weights, report


def _shared_canonical_count(src_vocab, tgt_vocab, cfg) -> int:
    src_canon = {
        canonicalize_token(t, cfg.src_scheme) for t in src_vocab if t not in SPECIAL_TOKENS
    }
    tgt_canon = {
        canonicalize_token(t, cfg.tgt_scheme) for t in tgt_vocab if t not in SPECIAL_TOKENS
    }
    return len(src_canon & tgt_canon)
