# tests/test_reports.py

import json
import numpy as np
import pandas as pd
import pytest
from data.data_models import RunConfig
from evaluation.cross_validation import cross_validate
from evaluation.reports import (
    build_provenance,
    importance_frame,
    per_label_aggregates,
    read_eval_report,
    summary_frame,
    write_eval_report,
    write_report_csv,
)
from features.matrix import FeatureMatrix
from utils.config import VERSION
from utils.exceptions import EvaluationError


def _lexical_matrix(labels):
    rows = np.array([[0.9, 0.6, 0.2, 0.0], [0.8, 0.4, 0.0, 0.0], [0.5, 0.5, 0.0, 1.0], [0.7, 0.3, 0.0, 2.0]])
    return FeatureMatrix(
        feature_names=["avg_ttr", "avg_lexical_diversity", "avg_contraction", "avg_emoticons"],
        rows=rows[: len(labels)],
        labels=np.asarray(labels),
    )


def test_per_label_aggregates_hand_checked():
    frame = per_label_aggregates(_lexical_matrix([0, 0, 1, 1]))
    assert len(frame) == 8
    human_ttr = frame[(frame.feature == "avg_ttr") & (frame.label == "human")].iloc[0]
    assert human_ttr["mean"] == pytest.approx(0.85)
    assert human_ttr["std"] == pytest.approx(0.05)
    assert human_ttr["n_accounts"] == 2
    bot_emoticons = frame[(frame.feature == "avg_emoticons") & (frame.label == "bot")].iloc[0]
    assert bot_emoticons["mean"] == pytest.approx(1.5)


def test_per_label_aggregates_skip_unlabelled_rows():
    frame = per_label_aggregates(_lexical_matrix([0, -1, 1, 1]))
    assert set(frame[frame.label == "human"]["n_accounts"]) == {1}


def test_per_label_aggregates_need_labels():
    with pytest.raises(EvaluationError):
        per_label_aggregates(_lexical_matrix([-1, -1]))


def test_importance_frame_ranks_stably():
    frame = importance_frame(["a", "b", "c", "d"], np.array([0.2, 0.4, 0.2, 0.2]))
    assert frame["feature"].tolist() == ["b", "a", "c", "d"]
    assert frame["rank"].tolist() == [1, 2, 3, 4]


def test_provenance_has_no_timestamp(lexicons):
    provenance = build_provenance(RunConfig(subcommand="evaluate", seed=7), lexicons)
    assert provenance["version"] == VERSION
    assert provenance["run_config"]["seed"] == 7
    assert set(provenance["lexicon_checksums"]) == {"stopwords.txt", "contractions.txt", "emoticons.txt"}
    assert set(provenance) == {"version", "run_config", "lexicon_checksums"}


def test_eval_report_round_trip(separable, tmp_path):
    report = cross_validate(separable, "gaussian_nb", k=4, seed=1, dataset_tag="toy_L")
    path = tmp_path / "report.json"
    write_eval_report(report, path)
    assert read_eval_report(path) == report
    summary = summary_frame([report])
    assert summary.loc[0, "classifier"] == "gaussian_nb"
    assert summary.loc[0, "auc"] == pytest.approx(report.mean.auc)


def test_report_csv_carries_provenance_line(tmp_path):
    path = tmp_path / "out.csv"
    write_report_csv(pd.DataFrame({"x": [0.5]}), path, {"version": VERSION})
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("# provenance: ")
    assert json.loads(first[len("# provenance: "):]) == {"version": VERSION}
    assert pd.read_csv(path, comment="#")["x"].tolist() == [0.5]
