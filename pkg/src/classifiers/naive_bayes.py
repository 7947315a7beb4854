# src/classifiers/naive_bayes.py

from typing import Any, Dict
import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class GaussianNBParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    var_smoothing: float = Field(default=1e-9, gt=0.0)


class GaussianNaiveBayes:
    """Gaussian Naive Bayes over the two classes (0 human, 1 bot)."""

    def __init__(self, params: GaussianNBParams):
        self.params = params
        self.means = np.zeros((2, 0))
        self.variances = np.zeros((2, 0))
        self.priors = np.zeros(2)

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GaussianNaiveBayes":
        epsilon = self.params.var_smoothing * float(X.var(axis=0).max())
        if epsilon <= 0.0:
            epsilon = self.params.var_smoothing
        self.means = np.stack([X[y == c].mean(axis=0) for c in (0, 1)])
        self.variances = np.stack([X[y == c].var(axis=0) for c in (0, 1)]) + epsilon
        self.priors = np.array([np.mean(y == 0), np.mean(y == 1)])
        return self

    def _joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        columns = []
        for c in (0, 1):
            log_norm = -0.5 * np.sum(np.log(2.0 * np.pi * self.variances[c]))
            squared = -0.5 * np.sum((X - self.means[c]) ** 2 / self.variances[c], axis=1)
            columns.append(np.log(self.priors[c]) + log_norm + squared)
        return np.stack(columns, axis=1)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Posterior probability of the bot class."""
        joint = self._joint_log_likelihood(np.asarray(X, dtype=float))
        evidence = np.logaddexp(joint[:, 0], joint[:, 1])
        return np.exp(joint[:, 1] - evidence)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "priors": self.priors.tolist(),
        }

    @classmethod
    def from_payload(cls, params: GaussianNBParams, payload: Dict[str, Any]) -> "GaussianNaiveBayes":
        model = cls(params)
        model.means = np.asarray(payload["means"], dtype=float)
        model.variances = np.asarray(payload["variances"], dtype=float)
        model.priors = np.asarray(payload["priors"], dtype=float)
        return model
