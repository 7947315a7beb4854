# src/classifiers/tree.py

from typing import Any, Dict, List, Optional, Tuple
import numpy as np

LEAF = -1


def gini(bots: np.ndarray, totals: np.ndarray) -> np.ndarray:
    """Gini impurity 1 - p_human^2 - p_bot^2 for binary class counts."""
    p_bot = bots / totals
    return 1.0 - p_bot ** 2 - (1.0 - p_bot) ** 2


class DecisionTree:
    """Binary CART classifier grown with Gini impurity over random feature subsets.

    Nodes live in parallel arrays; a node with feature == LEAF is a leaf. Rows go
    left when x[feature] <= threshold. Leaves keep the class counts of the training
    rows that reached them.
    """

    def __init__(
        self,
        max_features: int,
        min_samples_split: int = 2,
        max_depth: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ):
        self.max_features = max_features
        self.min_samples_split = min_samples_split
        self.max_depth = max_depth
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.feature = np.zeros(0, dtype=int)
        self.threshold = np.zeros(0, dtype=float)
        self.left = np.zeros(0, dtype=int)
        self.right = np.zeros(0, dtype=int)
        self.counts = np.zeros((0, 2), dtype=int)
        self.impurity = np.zeros(0, dtype=float)

    def _best_split(self, X: np.ndarray, y: np.ndarray) -> Optional[Tuple[int, float]]:
        n, d = X.shape
        best: Optional[Tuple[float, int, float]] = None
        examined = 0
        # constant features do not count towards max_features
        for f in self.rng.permutation(d):
            if examined >= self.max_features:
                break
            order = np.argsort(X[:, f], kind="stable")
            xs = X[order, f]
            ys = y[order]
            cut = np.nonzero(xs[:-1] < xs[1:])[0]
            if cut.size == 0:
                continue
            examined += 1
            left_n = cut + 1.0
            left_bot = np.cumsum(ys)[cut].astype(float)
            right_n = n - left_n
            right_bot = ys.sum() - left_bot
            weighted = (left_n * gini(left_bot, left_n) + right_n * gini(right_bot, right_n)) / n
            j = int(np.argmin(weighted))
            if best is None or weighted[j] < best[0]:
                lo, hi = xs[cut[j]], xs[cut[j] + 1]
                threshold = (lo + hi) / 2.0
                if threshold >= hi:
                    threshold = lo
                best = (float(weighted[j]), int(f), float(threshold))
        if best is None:
            return None
        return best[1], best[2]

    def fit(self, X: np.ndarray, y: np.ndarray) -> "DecisionTree":
        feature: List[int] = []
        threshold: List[float] = []
        left: List[int] = []
        right: List[int] = []
        counts: List[List[int]] = []
        impurity: List[float] = []

        def new_node(idx: np.ndarray) -> int:
            bots = int(y[idx].sum())
            counts.append([len(idx) - bots, bots])
            impurity.append(float(gini(np.float64(bots), np.float64(len(idx)))))
            feature.append(LEAF)
            threshold.append(0.0)
            left.append(LEAF)
            right.append(LEAF)
            return len(counts) - 1

        root = new_node(np.arange(len(y)))
        stack = [(root, np.arange(len(y)), 0)]
        while stack:
            node, idx, depth = stack.pop()
            if impurity[node] == 0.0 or len(idx) < self.min_samples_split:
                continue
            if self.max_depth is not None and depth >= self.max_depth:
                continue
            split = self._best_split(X[idx], y[idx])
            if split is None:
                continue
            f, t = split
            goes_left = X[idx, f] <= t
            feature[node], threshold[node] = f, t
            left[node] = new_node(idx[goes_left])
            right[node] = new_node(idx[~goes_left])
            stack.append((right[node], idx[~goes_left], depth + 1))
            stack.append((left[node], idx[goes_left], depth + 1))

        self.feature = np.asarray(feature, dtype=int)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=int)
        self.right = np.asarray(right, dtype=int)
        self.counts = np.asarray(counts, dtype=int).reshape(-1, 2)
        self.impurity = np.asarray(impurity, dtype=float)
        return self

    @property
    def n_splits(self) -> int:
        return int(np.sum(self.feature != LEAF))

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by every row."""
        node = np.zeros(X.shape[0], dtype=int)
        while True:
            active = np.nonzero(self.feature[node] != LEAF)[0]
            if active.size == 0:
                return node
            current = node[active]
            go_left = X[active, self.feature[current]] <= self.threshold[current]
            node[active] = np.where(go_left, self.left[current], self.right[current])

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        leaf_counts = self.counts[self.apply(X)]
        return leaf_counts[:, 1] / leaf_counts.sum(axis=1)

    def vote(self, X: np.ndarray) -> np.ndarray:
        """Leaf majority per row; an evenly split leaf votes bot."""
        return (self.predict_proba(X) >= 0.5).astype(int)

    def impurity_decrease(self, n_features: int) -> np.ndarray:
        """Total weighted Gini decrease attributed to each feature."""
        decrease = np.zeros(n_features, dtype=float)
        sizes = self.counts.sum(axis=1).astype(float)
        for node in np.nonzero(self.feature != LEAF)[0]:
            l, r = self.left[node], self.right[node]
            gain = sizes[node] * self.impurity[node] - sizes[l] * self.impurity[l] - sizes[r] * self.impurity[r]
            decrease[self.feature[node]] += max(gain, 0.0)
        return decrease

    def to_payload(self) -> Dict[str, Any]:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "counts": self.counts.tolist(),
            "impurity": self.impurity.tolist(),
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "DecisionTree":
        tree = cls(max_features=1)
        tree.feature = np.asarray(payload["feature"], dtype=int)
        tree.threshold = np.asarray(payload["threshold"], dtype=float)
        tree.left = np.asarray(payload["left"], dtype=int)
        tree.right = np.asarray(payload["right"], dtype=int)
        tree.counts = np.asarray(payload["counts"], dtype=int).reshape(-1, 2)
        tree.impurity = np.asarray(payload["impurity"], dtype=float)
        return tree
