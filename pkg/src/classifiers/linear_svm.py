# src/classifiers/linear_svm.py

from typing import Any, Dict
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from classifiers.scaling import Standardizer


class LinearSvmParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    regularization: float = Field(default=1e-4, gt=0.0)
    epochs: int = Field(default=200, ge=1)
    eta0: float = Field(default=0.1, gt=0.0)


class LinearSvm:
    """Linear SVM fitted by stochastic subgradient descent on the L2-regularized hinge loss.

    Samples are visited in a fresh seeded permutation every epoch; the step size decays
    as eta0 / (1 + eta0 * regularization * t). Scores squash the margin with a logistic.
    """

    def __init__(self, params: LinearSvmParams, seed: int):
        self.params = params
        self.seed = seed
        self.scaler: Standardizer = None
        self.weights = np.zeros(0)
        self.bias = 0.0

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LinearSvm":
        self.scaler = Standardizer.fit(X)
        Z = self.scaler.transform(X)
        signs = np.where(np.asarray(y) == 1, 1.0, -1.0)
        rng = np.random.default_rng(self.seed)
        lam, eta0 = self.params.regularization, self.params.eta0
        w = np.zeros(Z.shape[1])
        b = 0.0
        t = 0
        for _ in range(self.params.epochs):
            for i in rng.permutation(len(signs)):
                eta = eta0 / (1.0 + eta0 * lam * t)
                margin = signs[i] * (Z[i] @ w + b)
                w *= 1.0 - eta * lam
                if margin < 1.0:
                    w += eta * signs[i] * Z[i]
                    b += eta * signs[i]
                t += 1
        self.weights = w
        self.bias = float(b)
        return self

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        return self.scaler.transform(X) @ self.weights + self.bias

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return 0.5 * (1.0 + np.tanh(0.5 * self.decision_function(X)))

    def to_payload(self) -> Dict[str, Any]:
        return {"scaler": self.scaler.to_payload(), "weights": self.weights.tolist(), "bias": self.bias}

    @classmethod
    def from_payload(cls, params: LinearSvmParams, seed: int, payload: Dict[str, Any]) -> "LinearSvm":
        model = cls(params, seed)
        model.scaler = Standardizer.from_payload(payload["scaler"])
        model.weights = np.asarray(payload["weights"], dtype=float)
        model.bias = float(payload["bias"])
        return model
