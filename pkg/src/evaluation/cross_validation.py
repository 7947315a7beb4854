# src/evaluation/cross_validation.py

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Optional, Sequence
import numpy as np
from classifiers.models import REPORT_LABELS, predict_proba, threshold_scores, train, validate_params
from data.data_models import EvalReport, FoldAssignment, FoldMetrics, MetricSummary
from evaluation.metrics import confusion_metrics, roc_auc, weighted_precision_recall
from features.matrix import FEATURE_SETS, FeatureMatrix
from utils.exceptions import EvaluationError
from utils.logger import logger
from utils.progress import progress

METRIC_NAMES = list(MetricSummary.model_fields)


def stratified_kfold(labels: Sequence[int], k: int, seed: int) -> FoldAssignment:
    """Shuffles each class with the seed, then deals rows round-robin into k folds.

    The dealing position carries over from one class to the next, so fold sizes
    differ by at most one as well as per-class counts.
    """
    if k < 2:
        raise EvaluationError(f"k must be at least 2, got {k}")
    y = np.asarray(labels, dtype=int).reshape(-1)
    rng = np.random.default_rng(seed)
    folds = np.full(y.size, -1, dtype=int)
    offset = 0
    for label in (0, 1):
        members = np.nonzero(y == label)[0]
        if members.size < k:
            raise EvaluationError(f"class {label} has {members.size} rows, fewer than k={k} folds")
        for position, row in enumerate(rng.permutation(members)):
            folds[row] = (offset + position) % k
        offset = (offset + members.size) % k
    if np.any(folds < 0):
        raise EvaluationError("labels must be 0 (human) or 1 (bot) for stratification")
    return FoldAssignment(k=k, folds=folds.tolist())


def _infer_feature_set(names: Sequence[str]) -> str:
    for tag, columns in FEATURE_SETS.items():
        if list(names) == columns:
            return tag
    return "custom"


def summarize(folds: Sequence[FoldMetrics]) -> MetricSummary:
    """Equal-weight mean over folds."""
    return MetricSummary(
        **{name: math.fsum(getattr(f, name) for f in folds) / len(folds) for name in METRIC_NAMES}
    )


class CrossValidator:
    """Stratified k-fold evaluation of one classifier on one feature matrix."""
    def __init__(
        self,
        kind: str,
        params: Optional[Dict[str, Any]] = None,
        k: int = 10,
        seed: int = 42,
        jobs: int = 1,
    ):
        validate_params(kind, params)
        self.kind = kind
        self.params = params or {}
        self.k = k
        self.seed = seed
        self.jobs = max(1, jobs)

    def _run_fold(self, matrix: FeatureMatrix, assignment: FoldAssignment, fold: int) -> FoldMetrics:
        train_part = matrix.take(assignment.train_rows(fold))
        test_part = matrix.take(assignment.test_rows(fold))
        model = train(self.kind, train_part, self.params, self.seed)
        scores = predict_proba(model, test_part)
        predicted = threshold_scores(scores)
        accuracy, precision, recall = confusion_metrics(predicted, test_part.labels)
        precision_w, recall_w = weighted_precision_recall(predicted, test_part.labels)
        metrics = FoldMetrics(
            fold=fold,
            n_test=test_part.n_rows,
            accuracy=accuracy,
            precision=precision,
            recall=recall,
            auc=roc_auc(scores, test_part.labels),
            precision_weighted=precision_w,
            recall_weighted=recall_w,
        )
        progress.advance("Cross-validation", f"{self.kind}: fold {fold + 1} done")
        return metrics

    def run(
        self,
        matrix: FeatureMatrix,
        dataset_tag: str = "dataset",
        feature_set: Optional[str] = None,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> EvalReport:
        if not matrix.is_labeled:
            raise EvaluationError("cross-validation requires every row to carry a human/bot label")
        assignment = stratified_kfold(matrix.labels, self.k, self.seed)
        progress.begin("Cross-validation", total=self.k, message=f"{self.kind} on {matrix.n_rows} accounts")
        if self.jobs == 1:
            folds = [self._run_fold(matrix, assignment, f) for f in range(self.k)]
        else:
            # map keeps fold order regardless of completion order
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                folds = list(pool.map(lambda f: self._run_fold(matrix, assignment, f), range(self.k)))
        mean = summarize(folds)
        logger.info(
            f"{dataset_tag} {self.kind}: accuracy {mean.accuracy:.4f}, AUC {mean.auc:.4f} over {self.k} folds"
        )
        return EvalReport(
            dataset_tag=dataset_tag,
            classifier=self.kind,
            classifier_label=REPORT_LABELS[self.kind],
            feature_set=feature_set or _infer_feature_set(matrix.feature_names),
            feature_names=list(matrix.feature_names),
            k=self.k,
            seed=self.seed,
            folds=folds,
            mean=mean,
            provenance=provenance or {},
        )


def cross_validate(
    matrix: FeatureMatrix,
    kind: str,
    params: Optional[Dict[str, Any]] = None,
    k: int = 10,
    seed: int = 42,
    jobs: int = 1,
    dataset_tag: str = "dataset",
    feature_set: Optional[str] = None,
) -> EvalReport:
    return CrossValidator(kind, params, k=k, seed=seed, jobs=jobs).run(matrix, dataset_tag, feature_set)
