# src/evaluation/reports.py

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union
import numpy as np
import pandas as pd
from data.data_models import LABEL_NAMES, EvalReport, RunConfig
from features.lexical import LEXICAL_COLUMNS
from features.matrix import UNLABELED, FeatureMatrix
from lexicon.lexicons import Lexicons
from utils.config import VERSION
from utils.exceptions import EvaluationError
from utils.logger import logger

SUMMARY_COLUMNS = ["dataset_tag", "classifier", "feature_set", "accuracy", "precision", "recall", "auc", "seed"]

PathLike = Union[str, Path]


def build_provenance(run_config: RunConfig, lexicons: Optional[Lexicons] = None) -> Dict[str, Any]:
    """Tool version, effective configuration and lexicon checksums; never a timestamp."""
    return {
        "version": VERSION,
        "run_config": run_config.model_dump(mode="json"),
        "lexicon_checksums": dict(sorted(lexicons.checksums.items())) if lexicons is not None else {},
    }


def dumps_json(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_eval_report(report: EvalReport, path: PathLike) -> None:
    Path(path).write_text(dumps_json(report.model_dump(mode="json")), encoding="utf-8")
    logger.info(f"Wrote evaluation report to {path}")


def read_eval_report(path: PathLike) -> EvalReport:
    return EvalReport.model_validate_json(Path(path).read_text(encoding="utf-8"))


def write_report_csv(frame: pd.DataFrame, path: PathLike, provenance: Optional[Dict[str, Any]] = None) -> None:
    """CSV with an optional leading '# provenance:' comment line (read back with comment='#')."""
    header = ""
    if provenance is not None:
        header = "# provenance: " + json.dumps(provenance, sort_keys=True) + "\n"
    body = frame.to_csv(index=False, float_format="%.6f", lineterminator="\n")
    Path(path).write_text(header + body, encoding="utf-8")
    logger.info(f"Wrote {len(frame)} rows to {path}")


def summary_frame(reports: Sequence[EvalReport]) -> pd.DataFrame:
    """One row per report with its mean binary metrics."""
    rows = [
        {
            "dataset_tag": r.dataset_tag,
            "classifier": r.classifier_label,
            "feature_set": r.feature_set,
            "accuracy": r.mean.accuracy,
            "precision": r.mean.precision,
            "recall": r.mean.recall,
            "auc": r.mean.auc,
            "seed": r.seed,
        }
        for r in reports
    ]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def per_label_aggregates(matrix: FeatureMatrix, columns: Sequence[str] = LEXICAL_COLUMNS) -> pd.DataFrame:
    """Mean, population std and account count of each feature per label (bar-chart values)."""
    if matrix.labels is None:
        raise EvaluationError("per-label aggregates need labelled rows")
    view = matrix.select(columns)
    frame = pd.DataFrame(view.rows, columns=list(columns))
    frame["label"] = view.labels
    unlabeled = int((frame["label"] == UNLABELED).sum())
    if unlabeled:
        logger.warning(f"Ignoring {unlabeled} unlabelled rows in per-label aggregates")
    frame = frame[frame["label"] != UNLABELED]
    if frame.empty:
        raise EvaluationError("no labelled rows to aggregate")
    records: List[Dict[str, Any]] = []
    for code, group in frame.groupby("label", sort=True):
        for column in columns:
            records.append(
                {
                    "feature": column,
                    "label": LABEL_NAMES[int(code)],
                    "mean": float(group[column].mean()),
                    "std": float(group[column].std(ddof=0)),
                    "n_accounts": int(len(group)),
                }
            )
    return pd.DataFrame(records, columns=["feature", "label", "mean", "std", "n_accounts"])


def importance_frame(feature_names: Sequence[str], importances: np.ndarray) -> pd.DataFrame:
    """Features ranked by importance (rank 1 first); equal weights keep column order."""
    frame = pd.DataFrame({"feature": list(feature_names), "importance": np.asarray(importances, dtype=float)})
    frame = frame.sort_values("importance", ascending=False, kind="stable").reset_index(drop=True)
    frame["rank"] = np.arange(1, len(frame) + 1)
    return frame
