"""Command-line entry point.

One binary, subcommand style: ``clean``, ``dedup``, ``train-tokenizer``,
``eval-tokenizer``, ``build-space``, ``transfer``, ``sari``, ``score``,
``schedule``, ``report``.  Every subcommand is deterministic given its flags
and ``--seed``; diagnostics go to stderr and data goes to files.  Exit codes:
0 success, 1 usage error, 2 data/validation error.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from . import corpus as corpus_mod
from . import metrics as metrics_mod
from . import schedule as schedule_mod
from .bpe import BpeTrainConfig, TokenizerModel, train_bpe
from .common_space import AuxiliaryEncoder, CommonSpaceBuild, build_common_space
from .corpus import CleaningConfig, DedupConfig, PipelineReport
from .embeddings import (
    EmbeddingMatrix,
    WordVectorTable,
    load_matrix,
    load_word_vectors,
    read_vocab,
    save_matrix,
)
from .metrics import PredictionRecord, TASK_PARSERS
from .tokenizer_eval import corpus_token_report, fertility_histogram, lexicon_coverage, multi_token_rate
from .tokens import MARKER_SCHEMES
from .transfer import TransferConfig, apply_tied, focus_transfer, random_init, wechsel_transfer

SUBCOMMANDS = (
    "clean", "dedup", "train-tokenizer", "eval-tokenizer", "build-space",
    "transfer", "sari", "score", "schedule", "report",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map usage to 1
        raise UsageError(message)


# -- config file --------------------------------------------------------------

CONFIG_SCHEMA: dict[str, dict[str, type]] = {
    "run": {"seed": int, "threads": int},
    "clean": {"min_run_chars": int},
    "dedup": {"ngram_order": int, "duplicate_threshold": float, "unit": str},
    "tokenizer": {"vocab_size": int, "character_coverage": float, "byte_fallback": bool},
    "space": {"marker": str},
    "transfer": {
        "method": str, "k": int, "temperature": float, "tied": bool,
        "fallback": str, "src_marker": str, "tgt_marker": str,
    },
    "sari": {"orders": str},
    "score": {"task": str, "bootstrap": int, "level": float},
    "schedule": {"preset": str, "steps": int},
}

_BOOL_VALUES = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def load_config(path) -> dict[str, dict[str, object]]:
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",))
    parser.optionxform = str
    with open(path, encoding="utf-8") as f:
        parser.read_file(f)
    resolved: dict[str, dict[str, object]] = {}
    for section in parser.sections():
        if section not in CONFIG_SCHEMA:
            raise ValueError(f"unknown config section [{section}]")
        resolved[section] = {}
        for key, raw in parser.items(section):
            if key not in CONFIG_SCHEMA[section]:
                raise ValueError(f"unknown config key {key!r} in section [{section}]")
            typ = CONFIG_SCHEMA[section][key]
            if typ is bool:
                try:
                    resolved[section][key] = _BOOL_VALUES[raw.strip().lower()]
                except KeyError:
                    raise ValueError(f"config key {section}.{key} must be a boolean, got {raw!r}")
            else:
                try:
                    resolved[section][key] = typ(raw.strip())
                except ValueError:
                    raise ValueError(f"config key {section}.{key} must be {typ.__name__}, got {raw!r}")
    return resolved


class Settings:
    """Flag-over-config-over-default resolution."""

    def __init__(self, config: dict[str, dict[str, object]]):
        self.config = config
        self.used: dict[str, object] = {}

    def get(self, section: str, key: str, flag_value, default, record: bool = True):
        if flag_value is not None:
            value = flag_value
        else:
            value = self.config.get(section, {}).get(key, default)
        if record:
            self.used[f"{section}.{key}"] = value
        return value


# -- report files -------------------------------------------------------------

def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_report(path, command: str, settings: Settings, inputs: dict[str, str], body: list[str]) -> None:
    lines = [f"version = {__version__}", f"command = {command}"]
    lines += [f"config.{k} = {v}" for k, v in sorted(settings.used.items())]
    for name, p in sorted(inputs.items()):
        lines.append(f"input.{name}.sha256 = {_sha256(p)}")
    lines += body
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


_FLAG_DESTS = {"in": "infile"}


def _require(args, *names):
    missing = [
        n for n in names
        if getattr(args, _FLAG_DESTS.get(n, n.replace("-", "_")), None) is None
    ]
    if missing:
        raise UsageError("missing required flags: " + ", ".join(f"--{n}" for n in missing))


# -- subcommands ----------------------------------------------------------------

def _cmd_clean(args, settings: Settings) -> int:
    _require(args, "in", "out")
    min_run = settings.get("clean", "min_run_chars", args.min_run, 5)
    # A worker-count cap, not result-defining config: outputs (reports
    # included) must be byte-identical for any thread count.
    threads = settings.get("run", "threads", args.threads, 1, record=False)
    cfg = CleaningConfig(min_run_chars=min_run)
    files = corpus_mod.read_corpus(args.infile)
    report = PipelineReport()
    for cf in files:
        report.docs_in += len(cf.docs)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                cleaned = list(pool.map(lambda d: corpus_mod.clean_text(d.text, cfg), cf.docs))
        else:
            cleaned = [corpus_mod.clean_text(d.text, cfg) for d in cf.docs]
        new_docs = []
        for doc, (text, removed) in zip(cf.docs, cleaned):
            report.chars_removed += removed
            new_docs.append(corpus_mod.Document(doc.id, text, doc.source) if removed else doc)
        cf.docs = new_docs
        report.docs_kept += len(new_docs)
    corpus_mod.write_corpus(files, args.out)
    if args.report:
        write_report(args.report, "clean", settings, {"corpus": args.infile} if Path(args.infile).is_file() else {}, report.lines())
    return 0


def _cmd_dedup(args, settings: Settings) -> int:
    _require(args, "in", "out")
    cfg = DedupConfig(
        ngram_order=settings.get("dedup", "ngram_order", args.ngram, 9),
        duplicate_threshold=settings.get("dedup", "duplicate_threshold", args.threshold, 0.9),
        unit=settings.get("dedup", "unit", args.unit, "paragraph"),
    )
    files = corpus_mod.read_corpus(args.infile)
    docs = corpus_mod.all_documents(files)
    kept, report = corpus_mod.dedup_corpus(docs, cfg)
    kept_by_id = {d.id: d for d in kept}
    for cf in files:
        cf.docs = [kept_by_id[d.id] for d in cf.docs if d.id in kept_by_id]
    corpus_mod.write_corpus(files, args.out)
    if args.report:
        write_report(args.report, "dedup", settings, {}, report.lines())
    return 0


def _iter_training_lines(files):
    for cf in files:
        for doc in cf.docs:
            yield from (line for line in doc.text.splitlines() if line.strip())


def _cmd_train_tokenizer(args, settings: Settings) -> int:
    _require(args, "in", "out")
    cfg = BpeTrainConfig(
        vocab_size=settings.get("tokenizer", "vocab_size", args.vocab_size, 8000),
        character_coverage=settings.get("tokenizer", "character_coverage", args.character_coverage, 1.0),
        byte_fallback=settings.get("tokenizer", "byte_fallback", args.byte_fallback, True),
    )
    files = corpus_mod.read_corpus(args.infile)
    model = train_bpe(_iter_training_lines(files), cfg)
    model.save(args.out)
    if args.report:
        body = [f"vocab_size = {len(model.vocab)}", f"merges = {len(model.merges)}"]
        write_report(args.report, "train-tokenizer", settings, {"model": args.out}, body)
    return 0


def _cmd_eval_tokenizer(args, settings: Settings) -> int:
    _require(args, "model", "corpus", "out")
    model = TokenizerModel.load(args.model)
    files = corpus_mod.read_corpus(args.corpus)
    words = [w for cf in files for doc in cf.docs for w in doc.text.split()]
    hist = fertility_histogram(model, words)
    body = [
        f"total_words = {hist.total_words}",
        f"multi_token_rate = {multi_token_rate(hist):.6f}",
    ]
    for i, count in enumerate(hist.buckets, 1):
        label = f"{i}" if i < 10 else "10_or_more"
        body.append(f"words_with_{label}_tokens = {count}")
    inputs = {"model": args.model}
    if args.lexicon:
        lexicon = {
            line.strip() for line in Path(args.lexicon).read_text(encoding="utf-8").splitlines() if line.strip()
        }
        cov = lexicon_coverage(model, lexicon)
        body += [
            f"lexicon_tokens = {cov.vocab_size}",
            f"lexicon_hits = {cov.in_lexicon}",
            f"lexicon_fraction = {cov.fraction:.6f}",
        ]
        inputs["lexicon"] = args.lexicon
    if args.against:
        other = TokenizerModel.load(args.against)
        rep = corpus_token_report((d.text for cf in files for d in cf.docs), other, model)
        body += [
            f"tokens_other_model = {rep.count_a}",
            f"tokens_this_model = {rep.count_b}",
            f"token_ratio = {rep.ratio:.6f}",
        ]
        inputs["against"] = args.against
    write_report(args.out, "eval-tokenizer", settings, inputs, body)
    return 0


def _load_vocab_arg(args) -> list[str]:
    if args.tokenizer:
        return TokenizerModel.load(args.tokenizer).vocab
    if args.vocab:
        return read_vocab(args.vocab)
    raise UsageError("build-space needs --vocab or --tokenizer")


def _cmd_build_space(args, settings: Settings) -> int:
    _require(args, "out")
    marker = settings.get("space", "marker", args.marker, "sentencepiece")
    if marker not in MARKER_SCHEMES:
        raise ValueError(f"unknown marker scheme {marker!r}; choose from {sorted(MARKER_SCHEMES)}")
    vocab = _load_vocab_arg(args)
    inputs = {}
    if args.vectors:
        provider = load_word_vectors(args.vectors)
        inputs["vectors"] = args.vectors
    elif args.aux_tokenizer and args.aux_emb:
        provider = AuxiliaryEncoder(TokenizerModel.load(args.aux_tokenizer), load_matrix(args.aux_emb))
        inputs["aux_tokenizer"] = args.aux_tokenizer
        inputs["aux_emb"] = args.aux_emb
    else:
        raise UsageError("build-space needs --vectors, or --aux-tokenizer with --aux-emb")
    build = build_common_space(vocab, provider, MARKER_SCHEMES[marker])
    embedded = [t for t in vocab if t in build.vectors]
    rows = np.stack([build.vectors.entries[t] for t in embedded]) if embedded else np.empty((0, build.dim))
    save_matrix(EmbeddingMatrix(embedded, rows.astype(np.float32)), args.out)
    if args.report:
        body = [
            f"vocab_tokens = {len(vocab)}",
            f"embedded = {len(embedded)}",
            f"missing = {len(build.missing)}",
        ]
        write_report(args.report, "build-space", settings, inputs, body)
    return 0


def _space_from_files(space_path, vocab: list[str]) -> CommonSpaceBuild:
    mat = load_matrix(space_path)
    entries = {t: mat.rows[i].astype(float) for i, t in enumerate(mat.vocab) if t in set(vocab)}
    missing = {t for t in vocab if t not in entries}
    return CommonSpaceBuild(list(vocab), WordVectorTable(mat.dim, entries), missing)


def _cmd_transfer(args, settings: Settings) -> int:
    _require(args, "method", "src-emb", "tgt-vocab", "out")
    cfg = TransferConfig(
        method=settings.get("transfer", "method", args.method, None),
        k=settings.get("transfer", "k", args.k, 10),
        temperature=settings.get("transfer", "temperature", args.tau, 0.1),
        tied=settings.get("transfer", "tied", args.tied or None, False),
        seed=settings.get("run", "seed", args.seed, 0),
        fallback=settings.get("transfer", "fallback", args.fallback, "random-matched-moments"),
        src_scheme=MARKER_SCHEMES[settings.get("transfer", "src_marker", args.src_marker, "sentencepiece")],
        tgt_scheme=MARKER_SCHEMES[settings.get("transfer", "tgt_marker", args.tgt_marker, "sentencepiece")],
    )
    src = load_matrix(args.src_emb)
    if args.src_vocab:
        src = EmbeddingMatrix(read_vocab(args.src_vocab), src.rows)
    tgt_vocab = read_vocab(args.tgt_vocab)
    inputs = {"src_emb": args.src_emb, "tgt_vocab": args.tgt_vocab}

    if cfg.method == "random":
        matrix = random_init(tgt_vocab, src.dim, cfg.seed)
        report_lines = [f"method = random", f"rows = {len(tgt_vocab)}", f"dim = {src.dim}"]
    else:
        if not args.space_tgt:
            raise UsageError(f"--space-tgt is required for method {cfg.method}")
        wt = _space_from_files(args.space_tgt, tgt_vocab)
        inputs["space_tgt"] = args.space_tgt
        if cfg.method == "wechsel":
            if not args.space_src:
                raise UsageError("--space-src is required for method wechsel")
            ws = _space_from_files(args.space_src, src.vocab)
            inputs["space_src"] = args.space_src
            matrix, _, report = wechsel_transfer(src, ws, wt, cfg)
        else:
            matrix, _, report = focus_transfer(src, wt, cfg)
        report_lines = report.lines()
    save_matrix(matrix, args.out)
    if cfg.tied:
        tied_path = args.tied_out or str(Path(args.out).with_suffix(".output.wvec"))
        save_matrix(apply_tied(matrix, cfg), tied_path)
        report_lines.append(f"tied_output = {tied_path}")
    if args.report:
        write_report(args.report, "transfer", settings, inputs, report_lines)
    return 0


def _read_lines(path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def _cmd_sari(args, settings: Settings) -> int:
    _require(args, "input", "candidates", "references", "out")
    orders_raw = settings.get("sari", "orders", args.orders, "4")
    orders = tuple(int(x) for x in str(orders_raw).split(",") if x.strip())
    sources = _read_lines(args.input)
    candidates = _read_lines(args.candidates)
    references = [_read_lines(p) for p in args.references.split(",")]
    if not (len(sources) == len(candidates) and all(len(r) == len(sources) for r in references)):
        raise ValueError("input, candidate, and reference files must have equal line counts")
    total = 0.0
    total_alt = 0.0
    for i, (src, cand) in enumerate(zip(sources, candidates)):
        refs = [r[i] for r in references]
        total += metrics_mod.sari(src, cand, refs, orders).sari
        total_alt += metrics_mod.sari(src, cand, refs, metrics_mod.ALL_ORDERS).sari
    n = len(sources)
    if n == 0:
        raise ValueError("no sentences to score")
    body = [
        f"sentences = {n}",
        f"ngram_orders = {','.join(str(o) for o in orders)}",
        f"sari = {total / n:.6f}",
        f"sari_orders_1234 = {total_alt / n:.6f}",
        "reference_convention = multiset-union",
    ]
    write_report(args.out, "sari", settings,
                 {"input": args.input, "candidates": args.candidates}, body)
    return 0


def _cmd_score(args, settings: Settings) -> int:
    _require(args, "task", "records", "out")
    task = settings.get("score", "task", args.task, None)
    resamples = settings.get("score", "bootstrap", args.bootstrap, 10_000)
    level = settings.get("score", "level", args.level, 0.95)
    seed = settings.get("run", "seed", args.seed, 0)
    if args.labels:
        parser = metrics_mod.LabelParser(tuple(args.labels.split(",")), "search")
    elif task in TASK_PARSERS:
        parser = TASK_PARSERS[task]
    else:
        raise ValueError(f"no parser for task {task!r}; pass --labels")
    records = []
    for lineno, line in enumerate(_read_lines(args.records), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            raw = rec["raw_output"]
            records.append(PredictionRecord(str(rec["id"]), raw, str(rec["gold"]), parser(raw)))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ValueError(f"{args.records}:{lineno}: bad record ({e})")
    if not records:
        raise ValueError("no prediction records")
    inv = metrics_mod.invalid_rate(records)
    body = [f"task = {task}", f"records = {len(records)}", f"invalid_rate = {inv:.6f}"]
    table = [("invalid_rate", inv, "", "", "")]
    if inv < 1.0:
        acc = metrics_mod.accuracy_with_ci(records, level)
        body.append(f"accuracy = {acc}")
        table.append(("accuracy", acc.point, acc.lo, acc.hi, acc.method))
        labels = sorted({r.gold for r in records})
        for label in labels:
            f1 = metrics_mod.f1_with_bootstrap_ci(records, positive=label, resamples=resamples, seed=seed, level=level)
            body.append(f"f1_{label} = {f1}")
            table.append((f"f1_{label}", f1.point, f1.lo, f1.hi, f1.method))
    else:
        body.append("accuracy = n/a (no valid predictions)")
    write_report(args.out, "score", settings, {"records": args.records}, body)
    if args.table:
        with open(args.table, "w", encoding="utf-8", newline="\n") as f:
            f.write("metric\tpoint\tlo\thi\tmethod\n")
            for row in table:
                f.write("\t".join(str(x) if not isinstance(x, float) else f"{x:.6f}" for x in row) + "\n")
    return 0


def _cmd_schedule(args, settings: Settings) -> int:
    _require(args, "out")
    name = settings.get("schedule", "preset", args.preset, "gams")
    if name not in schedule_mod.PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(schedule_mod.PRESETS)}")
    preset = schedule_mod.PRESETS[name]
    steps = settings.get("schedule", "steps", args.steps, None)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write("step,lr,trainable\n")
        for step, lr, label in schedule_mod.schedule_rows(preset, steps):
            f.write(f"{step},{lr:.12g},{label}\n")
    if args.report:
        body = [
            f"preset = {preset.name}",
            f"warmup_steps = {preset.warmup_steps}",
            f"constant_steps = {preset.constant_steps}",
            f"total_steps = {steps if steps is not None else preset.total_steps}",
            f"adam_beta1 = {preset.adam_beta1}",
            f"adam_beta2 = {preset.adam_beta2}",
            f"freeze = {preset.freeze.mode}",
        ]
        write_report(args.report, "schedule", settings, {}, body)
    return 0


def _cmd_report(args, settings: Settings) -> int:
    print(f"version = {__version__}")
    for section in sorted(CONFIG_SCHEMA):
        for key in sorted(CONFIG_SCHEMA[section]):
            value = settings.config.get(section, {}).get(key)
            if value is not None:
                print(f"{section}.{key} = {value}")
    return 0


# -- argument wiring ----------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="vocadapt", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"vocadapt {__version__}")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--config", default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--report", default=None)

    p = sub.add_parser("clean", help="remove scanning artifacts from a corpus")
    common(p)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--min-run", type=int, default=None)

    p = sub.add_parser("dedup", help="near-deduplicate a corpus")
    common(p)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--ngram", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--unit", choices=("paragraph", "document"), default=None)

    p = sub.add_parser("train-tokenizer", help="train a BPE tokenizer")
    common(p)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--vocab-size", type=int, default=None)
    p.add_argument("--character-coverage", type=float, default=None)
    p.add_argument("--byte-fallback", action=argparse.BooleanOptionalAction, default=None)

    p = sub.add_parser("eval-tokenizer", help="fertility, lexicon, and token-count metrics")
    common(p)
    p.add_argument("--model", default=None)
    p.add_argument("--corpus", default=None)
    p.add_argument("--lexicon", default=None)
    p.add_argument("--against", default=None, help="second model for token-count comparison")
    p.add_argument("--out", default=None)

    p = sub.add_parser("build-space", help="embed a vocabulary in a common space")
    common(p)
    p.add_argument("--vocab", default=None)
    p.add_argument("--tokenizer", default=None)
    p.add_argument("--vectors", default=None)
    p.add_argument("--aux-tokenizer", default=None)
    p.add_argument("--aux-emb", default=None)
    p.add_argument("--marker", choices=sorted(MARKER_SCHEMES), default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("transfer", help="initialize a target-vocabulary embedding matrix")
    common(p)
    p.add_argument("--method", choices=("wechsel", "focus", "random"), default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--tau", type=float, default=None)
    p.add_argument("--tied", action="store_true", default=False)
    p.add_argument("--fallback", choices=("random-matched-moments", "error"), default=None)
    p.add_argument("--src-emb", default=None)
    p.add_argument("--src-vocab", default=None)
    p.add_argument("--tgt-vocab", default=None)
    p.add_argument("--space-src", default=None)
    p.add_argument("--space-tgt", default=None)
    p.add_argument("--src-marker", choices=sorted(MARKER_SCHEMES), default=None)
    p.add_argument("--tgt-marker", choices=sorted(MARKER_SCHEMES), default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--tied-out", default=None)

    p = sub.add_parser("sari", help="score simplification candidates")
    common(p)
    p.add_argument("--input", default=None)
    p.add_argument("--candidates", default=None)
    p.add_argument("--references", default=None, help="comma-separated reference files")
    p.add_argument("--orders", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("score", help="classification metrics with confidence intervals")
    common(p)
    p.add_argument("--task", default=None)
    p.add_argument("--records", default=None)
    p.add_argument("--bootstrap", type=int, default=None)
    p.add_argument("--level", type=float, default=None)
    p.add_argument("--labels", default=None, help="comma-separated label set overriding the task parser")
    p.add_argument("--out", default=None)
    p.add_argument("--table", default=None)

    p = sub.add_parser("schedule", help="emit a learning-rate/freeze plan as CSV")
    common(p)
    p.add_argument("--preset", choices=sorted(schedule_mod.PRESETS), default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--emit", choices=("csv",), default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("report", help="print the resolved configuration")
    common(p)

    return parser


_HANDLERS = {
    "clean": _cmd_clean,
    "dedup": _cmd_dedup,
    "train-tokenizer": _cmd_train_tokenizer,
    "eval-tokenizer": _cmd_eval_tokenizer,
    "build-space": _cmd_build_space,
    "transfer": _cmd_transfer,
    "sari": _cmd_sari,
    "score": _cmd_score,
    "schedule": _cmd_schedule,
    "report": _cmd_report,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        config = load_config(args.config) if args.config else {}
        settings = Settings(config)
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return _HANDLERS[args.command](args, settings)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
