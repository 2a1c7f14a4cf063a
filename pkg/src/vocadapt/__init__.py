"""Vocabulary adaptation toolkit: corpus preparation, BPE tokenizer training
and evaluation, and embedding-matrix transfer to a new vocabulary."""

__version__ = "0.1.0"

from .bpe import BpeTrainConfig, TokenizerModel, train_bpe
from .common_space import AuxiliaryEncoder, CommonSpaceBuild, build_common_space, subword_mean_embed
from .corpus import (
    CleaningConfig,
    DedupConfig,
    Document,
    PipelineReport,
    clean_document,
    dedup_corpus,
    scan_problematic_runs,
)
from .embeddings import EmbeddingMatrix, WordVectorTable, load_matrix, load_word_vectors, save_matrix, write_word_vectors
from .metrics import (
    FewShotSpec,
    MetricWithCI,
    PredictionRecord,
    SariBreakdown,
    accuracy_with_ci,
    f1_with_bootstrap_ci,
    invalid_rate,
    sample_few_shot,
    sari,
)
from .schedule import (
    FreezePolicy,
    LrScheduleConfig,
    PRESETS,
    lr_at_step,
    split_validation,
    steps_for_budget,
    trainable_groups,
)
from .tokenizer_eval import FertilityHistogram, LexiconCoverage, fertility_histogram, lexicon_coverage, multi_token_rate
from .tokens import MarkerScheme, canonicalize_token, surface_form
from .transfer import (
    TransferConfig,
    TransferReport,
    TransferWeights,
    apply_tied,
    cosine_similarity,
    focus_transfer,
    random_init,
    sparsemax,
    wechsel_transfer,
)
