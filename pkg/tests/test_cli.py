import json

import numpy as np
import pytest

from vocadapt.bpe import TokenizerModel
from vocadapt.cli import run
from vocadapt.embeddings import EmbeddingMatrix, load_matrix, save_matrix, write_vocab


@pytest.fixture
def corpus_dir(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "a.txt").write_text(
        "stara hiša ob reki ✦✦✦✦✦ ima nov dimnik\n", encoding="utf-8"
    )
    (d / "b.jsonl").write_text(
        json.dumps({"id": "r1", "source": "web", "text": "voda tece cez jez " * 4}, ensure_ascii=False)
        + "\n",
        encoding="utf-8",
    )
    return d


def test_no_arguments_is_usage_error(capsys):
    assert run([]) == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(["frobnicate"]) == 1
    err = capsys.readouterr().err
    assert "usage" in err


def test_clean_removes_junk_and_reports(corpus_dir, tmp_path, capsys):
    out = tmp_path / "cleaned"
    report = tmp_path / "clean.report"
    code = run(["clean", "--in", str(corpus_dir), "--out", str(out), "--report", str(report)])
    assert code == 0
    assert "✦" not in (out / "a.txt").read_text(encoding="utf-8")
    text = report.read_text(encoding="utf-8")
    assert "version = " in text and "chars_removed = 6" in text
    assert "config.clean.min_run_chars = 5" in text


def test_clean_threads_do_not_change_output(corpus_dir, tmp_path):
    outs = []
    for threads in (1, 8):
        out = tmp_path / f"out{threads}"
        assert run(["clean", "--in", str(corpus_dir), "--out", str(out), "--threads", str(threads)]) == 0
        outs.append((out / "a.txt").read_bytes())
    assert outs[0] == outs[1]


def test_dedup_drops_duplicate_document(tmp_path):
    d = tmp_path / "c"
    d.mkdir()
    text = " ".join(f"beseda{i}" for i in range(40))
    (d / "a.txt").write_text(text, encoding="utf-8")
    (d / "b.txt").write_text(text, encoding="utf-8")
    out = tmp_path / "out"
    report = tmp_path / "dedup.report"
    assert run(["dedup", "--in", str(d), "--out", str(out), "--report", str(report)]) == 0
    assert (out / "a.txt").exists()
    assert not (out / "b.txt").exists()
    assert "duplicate_units_dropped = 1" in report.read_text(encoding="utf-8")


def test_train_and_eval_tokenizer(corpus_dir, tmp_path):
    model_path = tmp_path / "model.bpe"
    assert run([
        "train-tokenizer", "--in", str(corpus_dir), "--out", str(model_path),
        "--vocab-size", "300",
    ]) == 0
    model = TokenizerModel.load(model_path)
    assert len(model.vocab) <= 300

    lexicon = tmp_path / "lex.txt"
    lexicon.write_text("voda\nhiša\n", encoding="utf-8")
    report = tmp_path / "eval.report"
    assert run([
        "eval-tokenizer", "--model", str(model_path), "--corpus", str(corpus_dir),
        "--lexicon", str(lexicon), "--against", str(model_path), "--out", str(report),
    ]) == 0
    text = report.read_text(encoding="utf-8")
    assert "multi_token_rate = " in text
    assert "token_ratio = 1.000000" in text
    assert "lexicon_fraction = " in text
    assert "input.model.sha256 = " in text


def _write_space_files(tmp_path, vocab, dim=4, seed=0, name="space.wvec"):
    rng = np.random.default_rng(seed)
    mat = EmbeddingMatrix(vocab, rng.normal(size=(len(vocab), dim)).astype(np.float32))
    path = tmp_path / name
    save_matrix(mat, path)
    return path


def test_transfer_focus_via_files(tmp_path):
    shared = [f"skup{i}" for i in range(6)]
    src_vocab = ["<s>", "</s>", "<pad>", "<unk>"] + [f"src{i}" for i in range(10)] + shared
    tgt_vocab = ["<s>", "</s>", "<pad>", "<unk>"] + shared + [f"tgt{i}" for i in range(12)]

    src_emb = _write_space_files(tmp_path, src_vocab, dim=8, seed=1, name="src.wvec")
    space_tgt = _write_space_files(tmp_path, [t for t in tgt_vocab if not t.startswith("<")],
                                   dim=4, seed=2, name="tgt_space.wvec")
    tgt_vocab_file = tmp_path / "tgt.vocab"
    write_vocab(tgt_vocab, tgt_vocab_file)

    out = tmp_path / "emb.wvec"
    report = tmp_path / "transfer.report"
    code = run([
        "transfer", "--method", "focus", "--seed", "9",
        "--src-emb", str(src_emb), "--tgt-vocab", str(tgt_vocab_file),
        "--space-tgt", str(space_tgt), "--out", str(out),
        "--tied", "--report", str(report),
    ])
    assert code == 0
    result = load_matrix(out)
    src = load_matrix(src_emb)
    assert result.vocab == tgt_vocab
    for tok in shared:
        assert np.array_equal(result.row(tok), src.row(tok))
    tied = load_matrix(tmp_path / "emb.output.wvec")
    assert np.array_equal(tied.rows, result.rows)
    text = report.read_text(encoding="utf-8")
    assert "overlap_size = 6" in text and "method = focus" in text


def test_transfer_empty_overlap_exits_2(tmp_path, capsys):
    src_emb = _write_space_files(tmp_path, ["alpha", "beta"], name="src.wvec")
    space_tgt = _write_space_files(tmp_path, ["gama"], name="sp.wvec")
    tgt_vocab_file = tmp_path / "t.vocab"
    write_vocab(["gama"], tgt_vocab_file)
    code = run([
        "transfer", "--method", "focus", "--src-emb", str(src_emb),
        "--tgt-vocab", str(tgt_vocab_file), "--space-tgt", str(space_tgt),
        "--out", str(tmp_path / "o.wvec"),
    ])
    assert code == 2
    assert "marker" in capsys.readouterr().err


def test_transfer_wechsel_deterministic_bytes(tmp_path):
    src_vocab = [f"s{i}" for i in range(12)]
    tgt_vocab = [f"t{i}" for i in range(9)]
    src_emb = _write_space_files(tmp_path, src_vocab, dim=6, seed=3, name="src.wvec")
    ws = _write_space_files(tmp_path, src_vocab, dim=4, seed=4, name="ws.wvec")
    wt = _write_space_files(tmp_path, tgt_vocab, dim=4, seed=5, name="wt.wvec")
    tgt_vocab_file = tmp_path / "t.vocab"
    write_vocab(tgt_vocab, tgt_vocab_file)
    blobs = []
    for attempt in range(2):
        out = tmp_path / f"out{attempt}.wvec"
        assert run([
            "transfer", "--method", "wechsel", "--k", "3", "--tau", "0.1", "--seed", "5",
            "--src-emb", str(src_emb), "--tgt-vocab", str(tgt_vocab_file),
            "--space-src", str(ws), "--space-tgt", str(wt), "--out", str(out),
        ]) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_transfer_random_method(tmp_path):
    src_emb = _write_space_files(tmp_path, ["a", "b"], dim=5, name="src.wvec")
    tgt_vocab_file = tmp_path / "t.vocab"
    write_vocab(["x", "y", "z"], tgt_vocab_file)
    out = tmp_path / "r.wvec"
    assert run([
        "transfer", "--method", "random", "--seed", "4",
        "--src-emb", str(src_emb), "--tgt-vocab", str(tgt_vocab_file), "--out", str(out),
    ]) == 0
    assert load_matrix(out).rows.shape == (3, 5)


def test_build_space_from_word_vectors(tmp_path):
    vectors = tmp_path / "wv.txt"
    vectors.write_text("2 3\nvoda 1 0 0\nkruh 0 1 0\n", encoding="utf-8")
    vocab_file = tmp_path / "v.vocab"
    write_vocab(["▁voda", "neznan"], vocab_file)
    out = tmp_path / "space.wvec"
    report = tmp_path / "space.report"
    assert run([
        "build-space", "--vocab", str(vocab_file), "--vectors", str(vectors),
        "--out", str(out), "--report", str(report),
    ]) == 0
    built = load_matrix(out)
    assert built.vocab == ["▁voda"]
    assert "missing = 1" in report.read_text(encoding="utf-8")


def test_sari_command(tmp_path):
    (tmp_path / "in.txt").write_text("a b c\n", encoding="utf-8")
    (tmp_path / "cand.txt").write_text("a b\n", encoding="utf-8")
    (tmp_path / "ref.txt").write_text("a c\n", encoding="utf-8")
    out = tmp_path / "sari.report"
    assert run([
        "sari", "--input", str(tmp_path / "in.txt"), "--candidates", str(tmp_path / "cand.txt"),
        "--references", str(tmp_path / "ref.txt"), "--orders", "1", "--out", str(out),
    ]) == 0
    text = out.read_text(encoding="utf-8")
    assert "sari = 50.000000" in text
    assert "sari_orders_1234 = " in text


def test_score_command(tmp_path):
    records = tmp_path / "records.jsonl"
    rows = []
    for i in range(8):
        gold = "entailment" if i % 2 else "neutral"
        raw = gold if i != 3 else "???"
        rows.append(json.dumps({"id": f"i{i}", "gold": gold, "raw_output": raw}))
    records.write_text("\n".join(rows) + "\n", encoding="utf-8")
    out = tmp_path / "score.report"
    table = tmp_path / "score.tsv"
    assert run([
        "score", "--task", "si-nli", "--records", str(records),
        "--bootstrap", "500", "--seed", "3", "--out", str(out), "--table", str(table),
    ]) == 0
    text = out.read_text(encoding="utf-8")
    assert "invalid_rate = 0.125000" in text
    assert "accuracy = " in text and "f1_entailment = " in text
    lines = table.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "metric\tpoint\tlo\thi\tmethod"
    assert len(lines) > 2


def test_schedule_command_and_rerun_identical(tmp_path):
    out = tmp_path / "plan.csv"
    argv = ["schedule", "--preset", "gams", "--out", str(out)]
    assert run(argv) == 0
    first = out.read_bytes()
    lines = first.decode().splitlines()
    assert lines[0] == "step,lr,trainable"
    assert lines[1] == "0,0,embedding+output"
    assert lines[2001].startswith("2000,0.0002,")
    assert run(argv) == 0
    assert out.read_bytes() == first


def test_config_file_resolution(tmp_path, corpus_dir):
    cfg = tmp_path / "tool.cfg"
    cfg.write_text("[clean]\nmin_run_chars = 4\n", encoding="utf-8")
    out = tmp_path / "out"
    report = tmp_path / "r.report"
    assert run([
        "clean", "--config", str(cfg), "--in", str(corpus_dir), "--out", str(out),
        "--report", str(report),
    ]) == 0
    assert "config.clean.min_run_chars = 4" in report.read_text(encoding="utf-8")
    # explicit flag wins over the config value
    out2 = tmp_path / "out2"
    report2 = tmp_path / "r2.report"
    assert run([
        "clean", "--config", str(cfg), "--in", str(corpus_dir), "--out", str(out2),
        "--min-run", "6", "--report", str(report2),
    ]) == 0
    assert "config.clean.min_run_chars = 6" in report2.read_text(encoding="utf-8")


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "tool.cfg"
    cfg.write_text("[clean]\nbanana = 1\n", encoding="utf-8")
    assert run(["report", "--config", str(cfg)]) == 2
    assert "unknown config key" in capsys.readouterr().err


def test_report_prints_resolved_config(tmp_path, capsys):
    cfg = tmp_path / "tool.cfg"
    cfg.write_text("[schedule]\npreset = gams\n# comment\n", encoding="utf-8")
    assert run(["report", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    assert "version = " in out
    assert "schedule.preset = gams" in out


def test_missing_required_flag_is_usage_error(capsys):
    assert run(["clean", "--out", "x"]) == 1
    assert "--in" in capsys.readouterr().err


def test_build_space_from_auxiliary_encoder(tmp_path):
    from vocadapt.bpe import BpeTrainConfig, train_bpe

    aux = train_bpe(["voda kruh sol voda kruh"], BpeTrainConfig(vocab_size=300))
    aux_path = tmp_path / "aux.bpe"
    aux.save(aux_path)
    rng = np.random.default_rng(5)
    save_matrix(
        EmbeddingMatrix(aux.vocab, rng.normal(size=(len(aux.vocab), 6)).astype(np.float32)),
        tmp_path / "aux.wvec",
    )
    vocab_file = tmp_path / "v.vocab"
    write_vocab(["voda", "▁kruh", "nepoznano"], vocab_file)
    out = tmp_path / "space.wvec"
    report = tmp_path / "space.report"
    assert run([
        "build-space", "--vocab", str(vocab_file),
        "--aux-tokenizer", str(aux_path), "--aux-emb", str(tmp_path / "aux.wvec"),
        "--out", str(out), "--report", str(report),
    ]) == 0
    built = load_matrix(out)
    # byte fallback lets the auxiliary encoder embed every surface form
    assert built.vocab == ["voda", "▁kruh", "nepoznano"]
    assert "missing = 0" in report.read_text(encoding="utf-8")
