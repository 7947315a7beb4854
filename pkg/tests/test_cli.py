# tests/test_cli.py

import json
import pandas as pd
import pytest
from data.corpus import load_corpus, write_corpus
from data.synthetic import default_synth_params, generate_synthetic_corpus
from main import EXIT_DATA, EXIT_OK, EXIT_USAGE, _parse_params, run
from utils.progress import progress


@pytest.fixture
def corpus_file(tmp_path, lexicons):
    params = default_synth_params(7).model_copy(update={"n_accounts": 10, "tweets_per_account": 15})
    path = tmp_path / "corpus.jsonl"
    write_corpus(generate_synthetic_corpus(params, lexicons), path)
    return path


@pytest.fixture
def profile_corpus_file(tmp_path, small_corpus):
    path = tmp_path / "profiles.jsonl"
    write_corpus(small_corpus, path)
    return path


def _evaluate_args(corpus, report, *extra):
    return [
        "evaluate", "--input", str(corpus), "--feature-set", "L", "--classifier", "random_forest",
        "--folds", "5", "--seed", "42", "--param", "n_trees=10", "--report", str(report), *extra,
    ]


def test_evaluate_writes_report(corpus_file, tmp_path):
    report_path = tmp_path / "out.json"
    summary_path = tmp_path / "summary.csv"
    assert run(_evaluate_args(corpus_file, report_path, "--summary", str(summary_path))) == EXIT_OK
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["dataset_tag"] == "corpus_L"
    assert report["k"] == 5
    assert len(report["folds"]) == 5
    assert report["provenance"]["run_config"]["params"] == {"n_trees": 10}
    assert "jobs" not in report["provenance"]["run_config"]
    summary = pd.read_csv(summary_path, comment="#")
    assert summary.loc[0, "classifier"] == "random_forest"
    assert summary.loc[0, "feature_set"] == "L"


def test_evaluate_is_byte_identical_across_runs_and_jobs(corpus_file, tmp_path, monkeypatch):
    outputs = []
    for run_dir, jobs in (("first", "1"), ("second", "1"), ("third", "4")):
        (tmp_path / run_dir).mkdir()
        monkeypatch.chdir(tmp_path / run_dir)
        (tmp_path / run_dir / "corpus.jsonl").write_bytes(corpus_file.read_bytes())
        assert run(_evaluate_args("corpus.jsonl", "report.json", "--jobs", jobs)) == EXIT_OK
        outputs.append((tmp_path / run_dir / "report.json").read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_train_profile_features_without_metadata(corpus_file, tmp_path):
    code = run(["train", "--input", str(corpus_file), "--feature-set", "F", "--model", str(tmp_path / "m.json")])
    assert code == EXIT_DATA
    assert not (tmp_path / "m.json").exists()


def test_train_then_predict(corpus_file, tmp_path):
    model_path = tmp_path / "model.json"
    scores_path = tmp_path / "scores.csv"
    assert run(["train", "--input", str(corpus_file), "--classifier", "gaussian_nb", "--model", str(model_path)]) == EXIT_OK
    model = json.loads(model_path.read_text(encoding="utf-8"))
    assert model["kind"] == "gaussian_nb"
    assert model["feature_names"] == ["avg_ttr", "avg_lexical_diversity", "avg_contraction", "avg_emoticons"]
    assert run(["predict", "--input", str(corpus_file), "--model", str(model_path), "--output", str(scores_path)]) == EXIT_OK
    frame = pd.read_csv(scores_path, comment="#")
    assert len(frame) == 20
    assert frame["score"].between(0.0, 1.0).all()
    assert set(frame["prediction"]) <= {0, 1}


def test_predict_on_profile_features(profile_corpus_file, tmp_path):
    model_path = tmp_path / "model.json"
    args = ["--input", str(profile_corpus_file), "--now", "2019-06-01T00:00:00Z"]
    assert run(["train", *args, "--feature-set", "FL", "--classifier", "knn", "--param", "k=1", "--model", str(model_path)]) == EXIT_OK
    assert run(["predict", *args, "--model", str(model_path), "--output", str(tmp_path / "p.csv")]) == EXIT_OK
    frame = pd.read_csv(tmp_path / "p.csv", comment="#")
    assert frame["prediction"].tolist() == [0, 0, 0, 1, 1, 1]


def test_features_then_plot_data(corpus_file, tmp_path):
    features_path = tmp_path / "features.csv"
    averages_path = tmp_path / "averages.csv"
    assert run(["features", "--input", str(corpus_file), "--output", str(features_path)]) == EXIT_OK
    features = pd.read_csv(features_path)
    assert list(features.columns[:2]) == ["account_id", "label"]
    assert run(["plot-data", "--input", str(features_path), "--out", str(averages_path)]) == EXIT_OK
    averages = pd.read_csv(averages_path, comment="#")
    bots = features[features["label"] == "bot"]
    row = averages[(averages.feature == "avg_emoticons") & (averages.label == "bot")].iloc[0]
    assert row["mean"] == pytest.approx(bots["avg_emoticons"].mean(), abs=1e-6)
    assert row["n_accounts"] == 10


def test_importance_ranks_lexical_features(corpus_file, tmp_path):
    out = tmp_path / "importance.csv"
    assert run(["importance", "--input", str(corpus_file), "--param", "n_trees=10", "--output", str(out)]) == EXIT_OK
    frame = pd.read_csv(out, comment="#")
    assert sorted(frame["feature"]) == sorted(["avg_ttr", "avg_lexical_diversity", "avg_contraction", "avg_emoticons"])
    assert frame["importance"].sum() == pytest.approx(1.0, abs=1e-5)


def test_importance_rejects_other_classifiers(corpus_file, tmp_path):
    args = ["importance", "--input", str(corpus_file), "--classifier", "knn", "--output", str(tmp_path / "i.csv")]
    assert run(args) == EXIT_USAGE


def test_tokenize_text_to_stdout(capsys):
    assert run(["tokenize", "--text", "I can't :) #yes"]) == EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["text"], r["kind"]) for r in records] == [
        ("I", "WORD"),
        ("can't", "CONTRACTION"),
        (":)", "EMOTICON"),
        ("#yes", "HASHTAG"),
    ]
    assert records[1]["span"] == [2, 7]


def test_synth_writes_loadable_corpus(tmp_path):
    out = tmp_path / "synth.jsonl"
    assert run(["synth", "--n-accounts", "3", "--tweets-per-account", "5", "--seed", "1", "--output", str(out)]) == EXIT_OK
    records = load_corpus(out).records
    assert len(records) == 6
    assert all(len(r.tweets) == 5 for r in records)


def test_synth_rejects_negative_accounts(tmp_path):
    assert run(["synth", "--n-accounts", "-1", "--output", str(tmp_path / "s.jsonl")]) == EXIT_USAGE


def test_annotate_writes_one_report_per_line(profile_corpus_file, tmp_path):
    out = tmp_path / "flags.jsonl"
    assert run(["annotate", "--input", str(profile_corpus_file), "--output", str(out)]) == EXIT_OK
    reports = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert [r["account_id"] for r in reports] == ["h0", "h1", "h2", "b0", "b1", "b2"]
    assert all(r["flags_fired"] == r["autogen_name"] + r["url_hashtag_flag"] + r["rate_flag"] for r in reports)
    meta = json.loads((tmp_path / "flags.jsonl.meta.json").read_text(encoding="utf-8"))
    assert meta["annotator"]["rate_threshold"] == 15
    assert meta["provenance"]["run_config"]["subcommand"] == "annotate"


@pytest.mark.parametrize(
    "argv",
    [
        ["evaluate", "--input", "x.jsonl", "--classifier", "svm", "--report", "r.json"],
        ["evaluate", "--input", "x.jsonl", "--feature-set", "Q"],
        ["frobnicate"],
        ["features", "--input", "x.jsonl", "--output", "f.csv", "--jobs", "0"],
        ["train", "--input", "x.jsonl", "--param", "n_trees", "--model", "m.json"],
        ["features", "--input", "x.jsonl"],
        ["evaluate", "--input", "x.jsonl", "--log-level", "chatty", "--report", "r.json"],
    ],
)
def test_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(argv) == EXIT_USAGE


def test_missing_input_file_is_a_data_error(tmp_path):
    assert run(["features", "--input", str(tmp_path / "absent.jsonl"), "--output", str(tmp_path / "f.csv")]) == EXIT_DATA


def test_malformed_corpus_strict_and_lenient(corpus_file, tmp_path):
    broken = tmp_path / "broken.jsonl"
    broken.write_text(corpus_file.read_text(encoding="utf-8") + "{not json\n", encoding="utf-8")
    out = tmp_path / "f.csv"
    assert run(["features", "--input", str(broken), "--output", str(out)]) == EXIT_DATA
    assert run(["features", "--input", str(broken), "--output", str(out), "--lenient"]) == EXIT_OK
    assert len(pd.read_csv(out)) == 20


def test_parse_params_reads_json_values():
    assert _parse_params(["n_trees=50", "max_features=sqrt", "max_depth=null"]) == {
        "n_trees": 50,
        "max_features": "sqrt",
        "max_depth": None,
    }


def test_tokenize_spans_are_utf8_byte_offsets(capsys):
    assert run(["tokenize", "--text", "café :)"]) == EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [(r["text"], r["kind"], r["span"]) for r in records] == [("café", "WORD", [0, 5]), (":)", "EMOTICON", [6, 8])]


def test_invalid_utf8_is_a_data_error(corpus_file, tmp_path):
    broken = tmp_path / "broken.jsonl"
    broken.write_bytes(corpus_file.read_bytes() + b'{"account_id": "\xff"}\n')
    out = tmp_path / "f.csv"
    assert run(["features", "--input", str(broken), "--output", str(out)]) == EXIT_DATA
    assert run(["features", "--input", str(broken), "--output", str(out), "--lenient"]) == EXIT_OK
    assert len(pd.read_csv(out)) == 20
    tweets = tmp_path / "tweets.txt"
    tweets.write_bytes(b"fine\n\xff\xfe bad\n")
    assert run(["tokenize", "--input", str(tweets)]) == EXIT_DATA
    features = tmp_path / "features.csv"
    features.write_bytes(b"account_id,label,avg_ttr\n\xff,bot,0.5\n")
    assert run(["plot-data", "--input", str(features), "--out", str(tmp_path / "a.csv")]) == EXIT_DATA
    assert run(["features", "--input", str(features), "--tweet-csv", "--output", str(out)]) == EXIT_DATA


def test_account_without_tokens_strict_and_lenient(corpus_file, tmp_path):
    padded = tmp_path / "padded.jsonl"
    silent = {"account_id": "silent", "label": "bot", "tweets": [{"text": "   "}]}
    padded.write_text(corpus_file.read_text(encoding="utf-8") + json.dumps(silent) + "\n", encoding="utf-8")
    out = tmp_path / "f.csv"
    assert run(["features", "--input", str(padded), "--output", str(out)]) == EXIT_DATA
    assert run(["features", "--input", str(padded), "--output", str(out), "--lenient"]) == EXIT_OK
    frame = pd.read_csv(out, dtype={"account_id": str})
    assert len(frame) == 20
    assert "silent" not in set(frame["account_id"])


def test_corpus_stage_reports_loaded_accounts(corpus_file, tmp_path):
    assert run(["features", "--input", str(corpus_file), "--output", str(tmp_path / "f.csv")]) == EXIT_OK
    assert progress.stages["Corpus"].message == "20 accounts"
