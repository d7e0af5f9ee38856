import json

from typominer.cli import run

from conftest import FIXTURES


def _pipeline(tmp_path, quiet=True):
    """Run all stages over the bundled fixture; returns the stage outputs."""
    q = ["--quiet"] if quiet else []
    out = {
        "eligible": tmp_path / "eligible.jsonl",
        "extracted": tmp_path / "extracted.jsonl",
        "langfiltered": tmp_path / "langfiltered.jsonl",
        "featurized": tmp_path / "featurized.jsonl",
        "pipeline": tmp_path / "pipeline.jsonl",
        "stats": tmp_path / "stats.tsv",
    }
    stages = [
        ["harvest", "--dump", str(FIXTURES / "events.jsonl"), "--out", str(out["eligible"])],
        ["extract", "--diff-dir", str(FIXTURES / "diffsets"),
         "--eligible", str(out["eligible"]), "--out", str(out["extracted"])],
        ["langfilter", "--in", str(out["extracted"]), "--profiles", str(FIXTURES / "profiles"),
         "--out", str(out["langfiltered"])],
        ["featurize", "--in", str(out["langfiltered"]), "--models", str(FIXTURES / "models"),
         "--out", str(out["featurized"])],
        ["classify", "--in", str(out["featurized"]), "--weights", str(FIXTURES / "weights.json"),
         "--out", str(out["pipeline"])],
        ["stats", "--in", str(out["pipeline"]), "--out", str(out["stats"])],
    ]
    for argv in stages:
        assert run(argv + q) == 0, argv
    return out


def test_unknown_subcommand_exit_1(capsys):
    assert run(["frobnicate"]) == 1
    assert "usage" in capsys.readouterr().err.lower()


def test_no_subcommand_exit_1(capsys):
    assert run([]) == 1


def test_help_exits_zero():
    assert run(["--help"]) == 0


def test_missing_input_file_exit_3(tmp_path):
    code = run(["stats", "--in", str(tmp_path / "nope.jsonl"), "--quiet"])
    assert code == 3


def test_malformed_corpus_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"repo": "a/b"}\n', encoding="utf-8")
    assert run(["stats", "--in", str(bad), "--quiet"]) == 2
    assert "data error" in capsys.readouterr().err


def test_full_pipeline_matches_golden(tmp_path):
    out = _pipeline(tmp_path)
    for name in ("eligible", "extracted", "langfiltered", "featurized", "pipeline", "stats"):
        produced = out[name].read_bytes()
        golden = (FIXTURES / "golden" / out[name].name).read_bytes()
        assert produced == golden, f"{name} differs from golden"


def test_stage_rerun_is_byte_identical(tmp_path):
    out = _pipeline(tmp_path)
    first = out["langfiltered"].read_bytes()
    assert run(["langfilter", "--in", str(out["extracted"]),
                "--profiles", str(FIXTURES / "profiles"),
                "--out", str(out["langfiltered"]), "--quiet"]) == 0
    assert out["langfiltered"].read_bytes() == first


def test_manifests_written(tmp_path):
    out = _pipeline(tmp_path)
    manifest_path = tmp_path / "pipeline.jsonl.manifest.json"
    assert manifest_path.is_file()
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    assert manifest["subcommand"] == "classify"
    assert manifest["counts"]["records"] == 3
    assert str(out["featurized"]) in manifest["inputs"]
    assert manifest["config_sha256"]


def test_harvest_flag_overrides(tmp_path):
    out = tmp_path / "eligible.jsonl"
    assert run(["harvest", "--dump", str(FIXTURES / "events.jsonl"),
                "--out", str(out), "--min-stars", "10", "--quiet"]) == 0
    names = [json.loads(line)["full_name"] for line in out.read_text().splitlines()]
    assert names == ["alice/docs-good", "bob/lowstars"]


def test_config_file_defaults_and_flag_precedence(tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("min-stars = 10\n# comment line\n", encoding="utf-8")
    out = tmp_path / "a.jsonl"
    assert run(["harvest", "--dump", str(FIXTURES / "events.jsonl"), "--out", str(out),
                "--config", str(config), "--quiet"]) == 0
    assert len(out.read_text().splitlines()) == 2  # config lowered the bar
    out2 = tmp_path / "b.jsonl"
    assert run(["harvest", "--dump", str(FIXTURES / "events.jsonl"), "--out", str(out2),
                "--config", str(config), "--min-stars", "50", "--quiet"]) == 0
    assert len(out2.read_text().splitlines()) == 1  # flag wins over config


def test_config_unknown_key_exit_1(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("no-such-option = 1\n", encoding="utf-8")
    assert run(["harvest", "--dump", "x", "--out", "y", "--config", str(config)]) == 1


def test_extract_requires_some_input(tmp_path, capsys):
    assert run(["extract", "--out", str(tmp_path / "o.jsonl"), "--quiet"]) == 1


def test_workers_do_not_change_output(tmp_path):
    out = _pipeline(tmp_path)
    parallel = tmp_path / "parallel.jsonl"
    assert run(["featurize", "--in", str(out["langfiltered"]),
                "--models", str(FIXTURES / "models"),
                "--out", str(parallel), "--workers", "4", "--quiet"]) == 0
    assert parallel.read_bytes() == out["featurized"].read_bytes()


def test_stats_output_table(tmp_path, capsys):
    out = _pipeline(tmp_path)
    capsys.readouterr()
    assert run(["stats", "--in", str(out["pipeline"]), "--quiet"]) == 0
    table = capsys.readouterr().out
    lines = table.strip().splitlines()
    assert lines[0] == "lang\tn_commits\tn_typo_edits\tn_all_edits\tn_chars"
    assert lines[-1].startswith("total\t3\t3\t4\t262")


def test_stats_dash_for_unlabeled(tmp_path, capsys):
    out = _pipeline(tmp_path)
    capsys.readouterr()
    assert run(["stats", "--in", str(out["extracted"]), "--quiet"]) == 0
    table = capsys.readouterr().out
    assert "---" in table


def test_atomic_stats_tsv_and_pretty(tmp_path, capsys):
    from typominer.corpus import CommitRecord, Edit, EditSide, serialize_commit

    corpus = tmp_path / "tiny.jsonl"
    rec = CommitRecord(
        repo="a/b", commit="3" * 40, message="typo",
        edits=[
            Edit(src=EditSide(text="helo", lang="eng"), tgt=EditSide(text="hello", lang="eng")),
            Edit(src=EditSide(text="a cat", lang="eng"), tgt=EditSide(text="acat", lang="eng")),
        ],
    )
    corpus.write_text(serialize_commit(rec) + "\n", encoding="utf-8")
    tsv = tmp_path / "atoms.tsv"
    capsys.readouterr()
    assert run(["atomic-stats", "--in", str(corpus), "--top", "5",
                "--out", str(tsv), "--quiet"]) == 0
    pretty = capsys.readouterr().out
    body = tsv.read_text(encoding="utf-8").splitlines()
    assert body[0] == "lang\tsrc\ttgt\tcount"
    assert any(line.startswith("eng\t") for line in body[1:])
    # sentinels appear only in the pretty variant: empty -> φ, whitespace -> _
    assert "φ" in pretty and "_" in pretty
    assert "φ" not in tsv.read_text(encoding="utf-8")


def test_atomic_stats_typo_only(tmp_path, capsys):
    out = _pipeline(tmp_path)
    capsys.readouterr()
    assert run(["atomic-stats", "--in", str(out["pipeline"]), "--typo-only", "--quiet"]) == 0
    typo_rows = [l for l in capsys.readouterr().out.splitlines()[1:] if l]
    capsys.readouterr()
    assert run(["atomic-stats", "--in", str(out["pipeline"]), "--quiet"]) == 0
    all_rows = [l for l in capsys.readouterr().out.splitlines()[1:] if l]
    assert len(typo_rows) < len(all_rows)


def test_eval_subcommand(tmp_path, capsys):
    gold = tmp_path / "gold.tsv"
    gold.write_text(
        "e1\tSPELL\tteh cat sat\tthe cat sat\n"
        "e2\tDET\tshe has cat\tshe has a cat\n",
        encoding="utf-8",
    )
    system = tmp_path / "system.tsv"
    system.write_text("e1\tthe cat sat\ne2\tshe has cat\n", encoding="utf-8")
    capsys.readouterr()
    assert run(["eval", "--gold", str(gold), "--system", str(system),
                "--beta", "0.5", "--quiet"]) == 0
    table = capsys.readouterr().out.strip().splitlines()
    assert table[0] == "category\tn_gold\ttp\tfp\tfn\tprecision\trecall\tf"
    rows = {line.split("\t")[0]: line.split("\t") for line in table[1:]}
    assert rows["SPELL"][5] == "1.000" and rows["SPELL"][6] == "1.000"
    assert rows["DET"][5] == "1.000" and rows["DET"][6] == "0.000"


def test_train_lm_and_featurize_chain(tmp_path):
    model_path = tmp_path / "eng.lm"
    assert run(["train-lm", "--text", str(FIXTURES / "text" / "eng_clean.txt"),
                "--out", str(model_path), "--quiet"]) == 0
    assert model_path.is_file()
    assert model_path.read_bytes() == (FIXTURES / "models" / "eng.lm").read_bytes()


def test_train_profiles_subcommand(tmp_path):
    out_dir = tmp_path / "profiles"
    assert run(["train-profiles",
                "--corpus", f"eng={FIXTURES / 'text' / 'eng_clean.txt'}",
                "--corpus", f"jpn={FIXTURES / 'text' / 'jpn_clean.txt'}",
                "--out-dir", str(out_dir), "--quiet"]) == 0
    produced = sorted(p.name for p in out_dir.glob("*.profile.json"))
    assert produced == ["eng.profile.json", "jpn.profile.json"]
    fixture = (FIXTURES / "profiles" / "eng.profile.json").read_bytes()
    assert (out_dir / "eng.profile.json").read_bytes() == fixture


def test_train_classifier_and_cv(tmp_path, capsys):
    weights_path = tmp_path / "weights.json"
    assert run(["train-classifier", "--annotations", str(FIXTURES / "annotations.tsv"),
                "--models", str(FIXTURES / "models"), "--lang", "eng",
                "--out", str(weights_path), "--quiet"]) == 0
    produced = json.loads(weights_path.read_text(encoding="utf-8"))
    fixture = json.loads((FIXTURES / "weights.json").read_text(encoding="utf-8"))
    assert produced == fixture
    capsys.readouterr()
    assert run(["cv", "--annotations", str(FIXTURES / "annotations.tsv"),
                "--models", str(FIXTURES / "models"), "--lang", "eng",
                "--k", "10", "--seed", "0", "--quiet"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "precision\trecall\tf1"
    p, r, f1 = (float(v) for v in lines[1].split("\t"))
    assert f1 >= 0.9


def test_classify_missing_weights_file_exit_3(tmp_path):
    out = _pipeline(tmp_path)
    assert run(["classify", "--in", str(out["featurized"]),
                "--weights", str(tmp_path / "missing.json"),
                "--out", str(tmp_path / "x.jsonl"), "--quiet"]) == 3
