import json
import random
from pathlib import Path

import numpy as np
import pytest

from vocadapt.bpe import BpeTrainConfig, train_bpe
from vocadapt.common_space import CommonSpaceBuild
from vocadapt.embeddings import EmbeddingMatrix, WordVectorTable

FIXTURES = Path(__file__).parent / "fixtures"


def _lines(name):
    return (FIXTURES / name).read_text(encoding="utf-8").splitlines()


@pytest.fixture(scope="session")
def slovene_lines():
    return _lines("slovene.txt")


@pytest.fixture(scope="session")
def english_lines():
    return _lines("english.txt")


@pytest.fixture(scope="session")
def heldout_lines():
    return _lines("slovene_heldout.txt")


@pytest.fixture(scope="session")
def lexicon():
    return {w for w in _lines("lexicon_sl.txt") if w}


@pytest.fixture(scope="session")
def sized_models(slovene_lines, english_lines):
    """Models of increasing vocab size trained on the combined fixture corpus."""
    corpus = slovene_lines + english_lines
    return {size: train_bpe(corpus, BpeTrainConfig(vocab_size=size)) for size in (1000, 2000, 4000)}


@pytest.fixture(scope="session")
def source_model(english_lines):
    """Stand-in for the original model's tokenizer: English-only training."""
    return train_bpe(english_lines, BpeTrainConfig(vocab_size=1000))


@pytest.fixture(scope="session")
def target_model(slovene_lines):
    """Stand-in for the adapted tokenizer: Slovene training, larger vocabulary."""
    return train_bpe(slovene_lines, BpeTrainConfig(vocab_size=1600))


class ToyTransferSetup:
    """A 200-token source model (dim 16) and a 300-token target vocabulary
    sharing 16 overlap tokens, with common spaces over both vocabularies."""

    def __init__(self, seed=20_240_611, space_dim=12, emb_dim=16):
        rng = np.random.default_rng(seed)
        specials = ["<s>", "</s>", "<pad>", "<unk>"]
        shared = [f"skupno{i}" for i in range(16)]
        self.src_vocab = specials + [f"izvor{i}" for i in range(180)] + shared
        self.no_vector = {f"cilj{i}" for i in range(260, 270)}
        self.tgt_vocab = specials + shared + [f"cilj{i}" for i in range(280)]
        assert len(self.src_vocab) == 200 and len(self.tgt_vocab) == 300
        self.src = EmbeddingMatrix(
            self.src_vocab, rng.normal(0, 0.4, size=(200, emb_dim)).astype(np.float32)
        )
        self.ws = self._space(rng, self.src_vocab, specials, space_dim)
        self.wt = self._space(rng, self.tgt_vocab, specials + sorted(self.no_vector), space_dim)

    @staticmethod
    def _space(rng, vocab, skip, dim):
        entries = {}
        missing = set()
        for tok in vocab:
            if tok in skip:
                missing.add(tok)
            else:
                entries[tok] = rng.normal(size=dim)
        return CommonSpaceBuild(list(vocab), WordVectorTable(dim, entries), missing)


@pytest.fixture(scope="session")
def toy_transfer():
    return ToyTransferSetup()


@pytest.fixture(scope="session")
def big_corpus_dir(tmp_path_factory, slovene_lines, english_lines):
    """A deterministic ~1 MB corpus directory expanded from the fixtures.

    Paragraphs are sampled sentence sequences, so near-duplicate paragraphs
    occur naturally; a handful of byte-identical documents are planted too.
    """
    root = tmp_path_factory.mktemp("bigcorpus")
    rng = random.Random(190_562)
    pool = slovene_lines + english_lines
    junk = "✦" * 6  # artifact run the cleaning stage must strip
    total = 0
    doc_index = 0
    while total < 1_000_000:
        paragraphs = []
        for _ in range(rng.randint(3, 8)):
            sents = [pool[rng.randrange(len(pool))] for _ in range(rng.randint(2, 5))]
            if rng.random() < 0.05:
                sents.insert(rng.randrange(len(sents)), f"pred {junk} za")
            paragraphs.append(" ".join(sents))
        text = "\n\n".join(paragraphs)
        if doc_index % 2 == 0:
            (root / f"doc{doc_index:05d}.txt").write_text(text, encoding="utf-8")
        else:
            rec = {"id": f"rec{doc_index:05d}", "source": "expanded", "text": text}
            with open(root / f"docs{doc_index % 3}.jsonl", "a", encoding="utf-8") as f:
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")
        total += len(text)
        doc_index += 1
        if doc_index % 37 == 0:  # planted exact duplicate
            (root / f"doc{doc_index:05d}.txt").write_text(text, encoding="utf-8")
            doc_index += 1
    return root
