# src/classifiers/forest.py

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Literal, Optional, Union
import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from classifiers.tree import DecisionTree


class ForestParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_trees: int = Field(default=100, ge=1)
    max_features: Union[int, Literal["sqrt", "all"]] = "sqrt"
    min_samples_split: int = Field(default=2, ge=2)
    max_depth: Optional[int] = Field(default=None, ge=1)

    def features_per_split(self, d: int) -> int:
        if self.max_features == "sqrt":
            return max(1, math.ceil(math.sqrt(d)))
        if self.max_features == "all":
            return d
        return max(1, min(int(self.max_features), d))


class RandomForest:
    """Bagged CART trees; tree i draws its bootstrap and feature subsets from seed + i."""

    def __init__(self, params: ForestParams, seed: int, jobs: int = 1):
        self.params = params
        self.seed = seed
        self.jobs = jobs
        self.trees: List[DecisionTree] = []
        self.n_features = 0

    def _grow(self, index: int, X: np.ndarray, y: np.ndarray) -> DecisionTree:
        rng = np.random.default_rng(self.seed + index)
        sample = rng.integers(0, len(y), size=len(y))
        tree = DecisionTree(
            max_features=self.params.features_per_split(X.shape[1]),
            min_samples_split=self.params.min_samples_split,
            max_depth=self.params.max_depth,
            rng=rng,
        )
        return tree.fit(X[sample], y[sample])

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RandomForest":
        self.n_features = X.shape[1]
        indices = range(self.params.n_trees)
        if self.jobs <= 1:
            self.trees = [self._grow(i, X, y) for i in indices]
        else:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                self.trees = list(pool.map(lambda i: self._grow(i, X, y), indices))
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Fraction of trees voting bot."""
        if X.shape[0] == 0:
            return np.zeros(0, dtype=float)
        votes = np.stack([tree.vote(X) for tree in self.trees])
        return votes.mean(axis=0)

    def feature_importances(self) -> np.ndarray:
        """Mean decrease in Gini impurity, normalized per tree, averaged and normalized to sum to 1.

        Trees without a split carry no information and are left out; a forest with no
        split at all gets uniform importances.
        """
        per_tree = []
        for tree in self.trees:
            decrease = tree.impurity_decrease(self.n_features)
            total = decrease.sum()
            if tree.n_splits > 0 and total > 0:
                per_tree.append(decrease / total)
        if not per_tree:
            return np.full(self.n_features, 1.0 / self.n_features)
        mean = np.mean(per_tree, axis=0)
        return mean / mean.sum()

    def to_payload(self) -> Dict[str, Any]:
        return {"n_features": self.n_features, "trees": [tree.to_payload() for tree in self.trees]}

    @classmethod
    def from_payload(cls, params: ForestParams, seed: int, payload: Dict[str, Any]) -> "RandomForest":
        forest = cls(params, seed)
        forest.n_features = int(payload["n_features"])
        forest.trees = [DecisionTree.from_payload(tree) for tree in payload["trees"]]
        return forest
