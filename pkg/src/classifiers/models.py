# src/classifiers/models.py

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union
import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, ValidationError
from classifiers.forest import ForestParams, RandomForest
from classifiers.knn import KNearestNeighbours, KnnParams
from classifiers.linear_svm import LinearSvm, LinearSvmParams
from classifiers.naive_bayes import GaussianNaiveBayes, GaussianNBParams
from features.matrix import FeatureMatrix
from utils.exceptions import ModelError
from utils.logger import logger

ModelKind = Literal["random_forest", "knn", "gaussian_nb", "linear_svm"]

PARAM_MODELS = {
    "random_forest": ForestParams,
    "knn": KnnParams,
    "gaussian_nb": GaussianNBParams,
    "linear_svm": LinearSvmParams,
}
KINDS: List[str] = list(PARAM_MODELS)

# Names used in reports; the SVM is linear, not the kernel machine the name "svc" usually implies
REPORT_LABELS: Dict[str, str] = {
    "random_forest": "random_forest",
    "knn": "knn",
    "gaussian_nb": "gaussian_nb",
    "linear_svm": "svc-linear",
}

Estimator = Union[RandomForest, KNearestNeighbours, GaussianNaiveBayes, LinearSvm]


class TrainedModel(BaseModel):
    """Self-describing trained classifier: kind, feature manifest, seed, validated params and fitted payload."""
    kind: ModelKind
    feature_names: List[str]
    seed: int
    params: Dict[str, Any]
    payload: Dict[str, Any]
    provenance: Dict[str, Any] = Field(default_factory=dict)

    _estimator: Optional[Estimator] = PrivateAttr(default=None)

    def estimator(self) -> Estimator:
        if self._estimator is None:
            self._estimator = _restore(self.kind, self.params, self.seed, self.payload)
        return self._estimator


def validate_params(kind: str, params: Optional[Dict[str, Any]] = None):
    """Validates a params dict against the parameter model of a classifier kind."""
    if kind not in PARAM_MODELS:
        raise ModelError(f"unknown classifier kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        return PARAM_MODELS[kind].model_validate(params or {})
    except ValidationError as exc:
        raise ModelError(f"invalid {kind} params: {exc}") from exc


def _restore(kind: str, params: Dict[str, Any], seed: int, payload: Dict[str, Any]) -> Estimator:
    validated = validate_params(kind, params)
    if kind == "random_forest":
        return RandomForest.from_payload(validated, seed, payload)
    if kind == "knn":
        return KNearestNeighbours.from_payload(validated, payload)
    if kind == "gaussian_nb":
        return GaussianNaiveBayes.from_payload(validated, payload)
    return LinearSvm.from_payload(validated, seed, payload)


def _check_training_matrix(matrix: FeatureMatrix) -> None:
    if matrix.n_rows == 0 or matrix.n_features == 0:
        raise ModelError(f"cannot train on an empty matrix ({matrix.n_rows} x {matrix.n_features})")
    if not np.all(np.isfinite(matrix.rows)):
        bad = sorted({matrix.feature_names[j] for j in np.nonzero(~np.isfinite(matrix.rows))[1]})
        raise ModelError(f"non-finite feature values in: {', '.join(bad)}")
    if not matrix.is_labeled:
        raise ModelError("training requires every row to carry a human/bot label")
    counts = np.bincount(matrix.labels, minlength=2)
    if counts[0] < 2 or counts[1] < 2:
        raise ModelError(f"training needs at least 2 accounts per class (human={counts[0]}, bot={counts[1]})")


def train(
    kind: str,
    matrix: FeatureMatrix,
    params: Optional[Dict[str, Any]] = None,
    seed: int = 42,
    jobs: int = 1,
) -> TrainedModel:
    """Fits a classifier; the result depends only on (kind, matrix, params, seed)."""
    validated = validate_params(kind, params)
    _check_training_matrix(matrix)
    X, y = matrix.rows, matrix.labels
    if kind == "random_forest":
        estimator: Estimator = RandomForest(validated, seed, jobs=jobs).fit(X, y)
    elif kind == "knn":
        estimator = KNearestNeighbours(validated).fit(X, y)
    elif kind == "gaussian_nb":
        estimator = GaussianNaiveBayes(validated).fit(X, y)
    else:
        estimator = LinearSvm(validated, seed).fit(X, y)
    logger.debug(f"Trained {kind} on {matrix.n_rows} rows x {matrix.n_features} features (seed {seed})")
    model = TrainedModel(
        kind=kind,
        feature_names=list(matrix.feature_names),
        seed=seed,
        params=validated.model_dump(),
        payload=estimator.to_payload(),
    )
    model._estimator = estimator
    return model


def _check_manifest(model: TrainedModel, matrix: FeatureMatrix) -> None:
    if list(matrix.feature_names) != model.feature_names:
        raise ModelError(
            f"feature names {matrix.feature_names} do not match the model manifest {model.feature_names}"
        )


def predict_proba(model: TrainedModel, matrix: FeatureMatrix) -> np.ndarray:
    """Bot-probability score in [0, 1] per row."""
    _check_manifest(model, matrix)
    if matrix.n_rows == 0:
        return np.zeros(0, dtype=float)
    if not np.all(np.isfinite(matrix.rows)):
        raise ModelError("non-finite feature values in prediction input")
    scores = model.estimator().predict_proba(matrix.rows)
    return np.clip(np.asarray(scores, dtype=float), 0.0, 1.0)


def predict(model: TrainedModel, matrix: FeatureMatrix) -> np.ndarray:
    """Label 1 (bot) when the score is at least 0.5."""
    return threshold_scores(predict_proba(model, matrix))


def threshold_scores(scores: np.ndarray) -> np.ndarray:
    return (np.asarray(scores, dtype=float) >= 0.5).astype(int)


def feature_importance(model: TrainedModel) -> np.ndarray:
    if model.kind != "random_forest":
        raise ModelError(f"feature importance is defined for random_forest models, not {model.kind}")
    return model.estimator().feature_importances()


def dumps_model(model: TrainedModel) -> str:
    # json keeps the shortest repr of each float, which parses back to the same double
    return json.dumps(model.model_dump(), indent=2, sort_keys=True)


def save_model(model: TrainedModel, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_model(model) + "\n", encoding="utf-8")
    logger.info(f"Saved {model.kind} model to {path}")


def load_model(path: Union[str, Path]) -> TrainedModel:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        return TrainedModel.model_validate(document)
    except FileNotFoundError as exc:
        raise ModelError(f"model file not found: {path}") from exc
    except (json.JSONDecodeError, ValidationError) as exc:
        raise ModelError(f"malformed model file {path}: {exc}") from exc
