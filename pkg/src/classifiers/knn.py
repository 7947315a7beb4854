# src/classifiers/knn.py

from typing import Any, Dict
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from classifiers.scaling import Standardizer


class KnnParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int = Field(default=5, ge=1)


class KNearestNeighbours:
    """Euclidean k-NN on standardized features; equal distances favour the lower training row."""

    def __init__(self, params: KnnParams):
        self.params = params
        self.scaler: Standardizer = None
        self.points = np.zeros((0, 0))
        self.labels = np.zeros(0, dtype=int)

    @property
    def k(self) -> int:
        return min(self.params.k, len(self.labels))

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNearestNeighbours":
        self.scaler = Standardizer.fit(X)
        self.points = self.scaler.transform(X)
        self.labels = np.asarray(y, dtype=int)
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Fraction of the k nearest neighbours labelled bot."""
        queries = self.scaler.transform(X)
        distances = ((queries[:, None, :] - self.points[None, :, :]) ** 2).sum(axis=2)
        nearest = np.argsort(distances, axis=1, kind="stable")[:, : self.k]
        return self.labels[nearest].mean(axis=1) if len(queries) else np.zeros(0)

    def to_payload(self) -> Dict[str, Any]:
        return {
            "scaler": self.scaler.to_payload(),
            "points": self.points.tolist(),
            "labels": self.labels.tolist(),
        }

    @classmethod
    def from_payload(cls, params: KnnParams, payload: Dict[str, Any]) -> "KNearestNeighbours":
        model = cls(params)
        model.scaler = Standardizer.from_payload(payload["scaler"])
        model.points = np.asarray(payload["points"], dtype=float).reshape(len(payload["labels"]), -1)
        model.labels = np.asarray(payload["labels"], dtype=int)
        return model
