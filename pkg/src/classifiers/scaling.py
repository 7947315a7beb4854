# src/classifiers/scaling.py

from typing import Any, Dict
import numpy as np


class Standardizer:
    """Centers and scales columns by train-set mean and population standard deviation."""

    def __init__(self, mean: np.ndarray, scale: np.ndarray):
        self.mean = np.asarray(mean, dtype=float)
        self.scale = np.asarray(scale, dtype=float)

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        std = X.std(axis=0)
        # constant columns are left unscaled
        return cls(X.mean(axis=0), np.where(std > 0, std, 1.0))

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.mean) / self.scale

    def to_payload(self) -> Dict[str, Any]:
        return {"mean": self.mean.tolist(), "scale": self.scale.tolist()}

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "Standardizer":
        return cls(np.asarray(payload["mean"], dtype=float), np.asarray(payload["scale"], dtype=float))
