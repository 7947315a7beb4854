# src/data/feature_io.py

from pathlib import Path
from typing import List, Union
import numpy as np
import pandas as pd
from data.data_models import LABEL_CODES, LABEL_NAMES
from features.matrix import BOOKKEEPING_COLUMNS, UNLABELED, FeatureMatrix
from utils.exceptions import DataError
from utils.logger import logger

ID_COLUMNS = ["account_id", "label"]
FLOAT_FORMAT = "%.6f"

PathLike = Union[str, Path]


def write_feature_csv(matrix: FeatureMatrix, path: PathLike) -> None:
    """account_id, label ('human', 'bot' or empty) and one column per feature, floats at 6 decimals."""
    frame = pd.DataFrame(matrix.rows, columns=matrix.feature_names)
    for column in BOOKKEEPING_COLUMNS:
        if column in frame.columns:
            frame[column] = frame[column].round().astype(int)
    labels = matrix.labels if matrix.labels is not None else np.full(matrix.n_rows, UNLABELED)
    frame.insert(0, "account_id", matrix.account_ids)
    frame.insert(1, "label", [LABEL_NAMES.get(int(code), "") for code in labels])
    Path(path).write_text(frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"), encoding="utf-8")
    logger.info(f"Wrote {matrix.n_rows} feature rows ({matrix.n_features} columns) to {path}")


def read_feature_csv(path: PathLike) -> FeatureMatrix:
    """Reads a feature CSV written by write_feature_csv; missing or non-numeric columns are named in the error."""
    try:
        frame = pd.read_csv(path, dtype={"account_id": str, "label": str}, keep_default_na=False)
    except pd.errors.EmptyDataError as exc:
        raise DataError(f"feature CSV {path} is empty (no header)") from exc
    except (OSError, pd.errors.ParserError) as exc:
        raise DataError(f"cannot read feature CSV {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataError(f"feature CSV {path} is not valid UTF-8 (byte offset {exc.start})") from exc
    missing = [c for c in ID_COLUMNS if c not in frame.columns]
    if missing:
        raise DataError(f"feature CSV {path} is missing column(s): {', '.join(missing)}")
    names: List[str] = [c for c in frame.columns if c not in ID_COLUMNS]
    if not names:
        raise DataError(f"feature CSV {path} has no feature columns")
    unknown = sorted(set(frame["label"]) - set(LABEL_CODES) - {""})
    if unknown:
        raise DataError(f"feature CSV {path}: unknown label(s) {', '.join(unknown)}")
    values = frame[names].apply(pd.to_numeric, errors="coerce")
    for name in names:
        if values[name].isna().any():
            row = int(np.nonzero(values[name].isna().to_numpy())[0][0]) + 2
            raise DataError(f"feature CSV {path}: column {name!r} has a missing or non-numeric value on line {row}")
    return FeatureMatrix(
        feature_names=names,
        rows=values.to_numpy(dtype=float).reshape(len(frame), len(names)),
        labels=np.asarray([LABEL_CODES.get(v, UNLABELED) for v in frame["label"]], dtype=int),
        account_ids=frame["account_id"].astype(str).tolist(),
    )
