# src/features/matrix.py

from datetime import datetime
from typing import Annotated, Dict, List, Optional, Sequence
import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, model_validator
from data.data_models import AccountRecord
from features.lexical import LEXICAL_COLUMNS, RATE_COLUMNS, extract_account_features
from features.profile import PROFILE_COLUMNS, corpus_reference_time, extract_profile_features
from lexicon.lexicons import Lexicons
from utils.exceptions import DataError

UNLABELED = -1
BOOKKEEPING_COLUMNS = ["tweets_used"]

FEATURE_SETS: Dict[str, List[str]] = {
    "L": list(LEXICAL_COLUMNS),
    "F": list(PROFILE_COLUMNS),
    "FL": list(PROFILE_COLUMNS) + list(LEXICAL_COLUMNS),
}

Array = Annotated[np.ndarray, BeforeValidator(np.asarray)]


class FeatureMatrix(BaseModel):
    """Named numeric columns per account plus a label vector (0 human, 1 bot, -1 unknown)."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    feature_names: List[str]
    rows: Array
    labels: Optional[Array] = None
    account_ids: List[str] = []

    @model_validator(mode="after")
    def _check_shape(self) -> "FeatureMatrix":
        rows = np.asarray(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, len(self.feature_names))
        if rows.ndim != 2 or rows.shape[1] != len(self.feature_names):
            raise ValueError(f"matrix shape {rows.shape} does not match {len(self.feature_names)} feature names")
        self.rows = rows
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int).reshape(-1)
            if labels.shape[0] != rows.shape[0]:
                raise ValueError(f"{labels.shape[0]} labels for {rows.shape[0]} rows")
            self.labels = labels
        if not self.account_ids:
            self.account_ids = [f"row-{i}" for i in range(rows.shape[0])]
        elif len(self.account_ids) != rows.shape[0]:
            raise ValueError(f"{len(self.account_ids)} account ids for {rows.shape[0]} rows")
        return self

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.rows.shape[1])

    @property
    def is_labeled(self) -> bool:
        return self.labels is not None and bool(np.all(self.labels != UNLABELED))

    def select(self, names: Sequence[str]) -> "FeatureMatrix":
        """Column view in the requested order; missing columns are named in the error."""
        missing = [name for name in names if name not in self.feature_names]
        if missing:
            raise DataError(f"missing feature columns: {', '.join(missing)}")
        index = [self.feature_names.index(name) for name in names]
        return FeatureMatrix(
            feature_names=list(names),
            rows=self.rows[:, index],
            labels=self.labels,
            account_ids=list(self.account_ids),
        )

    def take(self, row_indices: Sequence[int]) -> "FeatureMatrix":
        idx = np.asarray(row_indices, dtype=int)
        return FeatureMatrix(
            feature_names=list(self.feature_names),
            rows=self.rows[idx],
            labels=self.labels[idx] if self.labels is not None else None,
            account_ids=[self.account_ids[i] for i in idx],
        )

    def feature_set(self, tag: str) -> "FeatureMatrix":
        if tag not in FEATURE_SETS:
            raise DataError(f"unknown feature set {tag!r}; expected one of {', '.join(FEATURE_SETS)}")
        try:
            return self.select(FEATURE_SETS[tag])
        except DataError as exc:
            raise DataError(f"feature set {tag}: {exc}") from exc


def build_matrix(
    accounts: Sequence[AccountRecord],
    lexicons: Lexicons,
    include_profile: bool = False,
    now: Optional[datetime] = None,
    with_rates: bool = False,
    jobs: int = 1,
    strict: bool = True,
) -> FeatureMatrix:
    """Extracts the lexical columns (and optionally rate and profile columns) for every account.

    In lenient mode accounts without a single token are left out of the matrix.
    """
    if not accounts:
        raise DataError("no accounts to extract features from")
    vectors = extract_account_features(accounts, lexicons, jobs=jobs, strict=strict)
    kept = [(a, v) for a, v in zip(accounts, vectors) if v is not None]
    if not kept:
        raise DataError("no account produced any tokens")
    accounts = [a for a, _ in kept]
    names = list(LEXICAL_COLUMNS) + BOOKKEEPING_COLUMNS + (list(RATE_COLUMNS) if with_rates else [])
    columns = [[getattr(v, name) for name in names] for _, v in kept]
    if include_profile:
        reference = now or corpus_reference_time(accounts)
        profiles = extract_profile_features(accounts, reference)
        names += PROFILE_COLUMNS
        columns = [row + [getattr(p, name) for name in PROFILE_COLUMNS] for row, p in zip(columns, profiles)]
    labels = [a.label_code if a.label_code is not None else UNLABELED for a in accounts]
    return FeatureMatrix(
        feature_names=names,
        rows=np.asarray(columns, dtype=float),
        labels=np.asarray(labels, dtype=int),
        account_ids=[a.account_id for a in accounts],
    )
