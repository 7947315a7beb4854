# src/evaluation/metrics.py

from typing import Sequence, Tuple
import numpy as np
import pandas as pd
from utils.exceptions import EvaluationError


def _binary_pair(predicted: Sequence[int], actual: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(predicted, dtype=int).reshape(-1)
    a = np.asarray(actual, dtype=int).reshape(-1)
    if p.shape != a.shape:
        raise EvaluationError(f"length mismatch: {p.size} predictions for {a.size} labels")
    if a.size == 0:
        raise EvaluationError("metrics need at least one row")
    if not (np.isin(p, (0, 1)).all() and np.isin(a, (0, 1)).all()):
        raise EvaluationError("predictions and labels must be 0 (human) or 1 (bot)")
    return p, a


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


def confusion_counts(predicted: Sequence[int], actual: Sequence[int]) -> Tuple[int, int, int, int]:
    """(TP, FP, FN, TN) with bot = 1 as the positive class."""
    p, a = _binary_pair(predicted, actual)
    tp = int(np.sum((p == 1) & (a == 1)))
    fp = int(np.sum((p == 1) & (a == 0)))
    fn = int(np.sum((p == 0) & (a == 1)))
    tn = int(np.sum((p == 0) & (a == 0)))
    return tp, fp, fn, tn


def confusion_metrics(predicted: Sequence[int], actual: Sequence[int]) -> Tuple[float, float, float]:
    """Accuracy, precision and recall for the bot class; an empty denominator yields 0."""
    tp, fp, fn, tn = confusion_counts(predicted, actual)
    n = tp + fp + fn + tn
    return (tp + tn) / n, _ratio(tp, tp + fp), _ratio(tp, tp + fn)


def weighted_precision_recall(predicted: Sequence[int], actual: Sequence[int]) -> Tuple[float, float]:
    """Per-class precision and recall averaged with class-support weights."""
    tp, fp, fn, tn = confusion_counts(predicted, actual)
    n = tp + fp + fn + tn
    support_bot, support_human = tp + fn, tn + fp
    precision = (support_bot * _ratio(tp, tp + fp) + support_human * _ratio(tn, tn + fn)) / n
    recall = (support_bot * _ratio(tp, tp + fn) + support_human * _ratio(tn, tn + fp)) / n
    return precision, recall


def roc_auc(scores: Sequence[float], actual: Sequence[int]) -> float:
    """Mann-Whitney AUC: P(random bot outscores random human), ties counted half."""
    s = np.asarray(scores, dtype=float).reshape(-1)
    a = np.asarray(actual, dtype=int).reshape(-1)
    if s.shape != a.shape:
        raise EvaluationError(f"length mismatch: {s.size} scores for {a.size} labels")
    n_pos = int(np.sum(a == 1))
    n_neg = int(np.sum(a == 0))
    if n_pos == 0 or n_neg == 0:
        raise EvaluationError("AUC is undefined when only one class is present")
    if n_pos + n_neg != a.size:
        raise EvaluationError("labels must be 0 (human) or 1 (bot)")
    ranks = pd.Series(s).rank(method="average").to_numpy()
    rank_sum = float(ranks[a == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
