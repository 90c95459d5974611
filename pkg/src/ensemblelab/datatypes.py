"""Core datatypes: labeled datasets, decision trees, boosted and bagged models.

Labels are stored as integers -1/+1 everywhere so margin and vote arithmetic
stays direct.  A margin of exactly zero, or an even vote split, always
resolves to +1 (``TIE_LABEL``); documenting one fixed rule keeps every run
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TIE_LABEL = 1


def sign_labels(values) -> np.ndarray:
    """Map margins or vote sums to hard -1/+1 labels with the +1 tie rule."""
    return np.where(np.asarray(values) < 0, -1, TIE_LABEL).astype(np.int8)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Points in [0,1]^d with -1/+1 labels and optional non-negative weights.

    Invariants are enforced at construction: a non-empty finite feature
    matrix, labels exactly -1 or +1, and (when present) weights that are
    non-negative with a positive sum.
    """

    features: np.ndarray
    labels: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        features = np.ascontiguousarray(self.features, dtype=np.float64)
        if features.ndim != 2 or features.shape[0] < 1 or features.shape[1] < 1:
            raise ValueError("features must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(features)):
            raise ValueError("features must be finite")
        labels = np.asarray(self.labels)
        if labels.shape != (features.shape[0],):
            raise ValueError(
                f"expected {features.shape[0]} labels, got shape {labels.shape}"
            )
        if not np.all(np.isin(labels, (-1, 1))):
            raise ValueError("labels must be -1 or +1")
        labels = labels.astype(np.int8)
        weights = self.weights
        if weights is not None:
            weights = np.ascontiguousarray(weights, dtype=np.float64)
            if weights.shape != (features.shape[0],):
                raise ValueError("weights must be one per row")
            if not np.all(np.isfinite(weights)) or np.any(weights < 0):
                raise ValueError("weights must be finite and non-negative")
            if weights.sum() <= 0:
                raise ValueError("weights must have positive sum")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)

    @property
    def n_points(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def with_weights(self, weights) -> "LabeledDataset":
        return LabeledDataset(self.features, self.labels, weights)


@dataclass(frozen=True)
class SplitRule:
    """Axis-aligned test: a point goes left iff ``x[feature] < threshold``."""

    feature: int
    threshold: float

    def __post_init__(self):
        if self.feature < 0:
            raise ValueError("feature index must be non-negative")
        if not np.isfinite(self.threshold):
            raise ValueError("threshold must be finite")


@dataclass(frozen=True, eq=False)
class DecisionTree:
    """Binary axis-aligned tree stored as parallel node arrays.

    Node 0 is the root.  ``feature[i] < 0`` marks a leaf whose label is
    ``leaf_label[i]``; internal nodes carry a feature index, a midpoint
    threshold, and child ids.  Children always have larger ids than their
    parent, so a reverse id sweep visits children first.
    """

    feature: np.ndarray      # int32, -1 at leaves
    threshold: np.ndarray    # float64, NaN at leaves
    left: np.ndarray         # int32, -1 at leaves
    right: np.ndarray        # int32, -1 at leaves
    leaf_label: np.ndarray   # int8, 0 at internal nodes
    n_features: int
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "feature", np.asarray(self.feature, dtype=np.int32))
        object.__setattr__(self, "threshold", np.asarray(self.threshold, dtype=np.float64))
        object.__setattr__(self, "left", np.asarray(self.left, dtype=np.int32))
        object.__setattr__(self, "right", np.asarray(self.right, dtype=np.int32))
        object.__setattr__(self, "leaf_label", np.asarray(self.leaf_label, dtype=np.int8))
        n = len(self.feature)
        if n < 1 or any(
            len(a) != n for a in (self.threshold, self.left, self.right, self.leaf_label)
        ):
            raise ValueError("node arrays must be non-empty and equally long")
        if self.depth < 0 or self.n_features < 1:
            raise ValueError("invalid depth or feature count")

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature < 0))

    def split_rule(self, node: int) -> SplitRule | None:
        if self.feature[node] < 0:
            return None
        return SplitRule(int(self.feature[node]), float(self.threshold[node]))

    def _check_dim(self, points: np.ndarray):
        if points.shape[-1] != self.n_features:
            raise ValueError(
                f"point dimension {points.shape[-1]} != tree dimension {self.n_features}"
            )

    def predict(self, points):
        """Labels for a single point (returns int) or an (m, d) batch."""
        points = np.asarray(points, dtype=np.float64)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        self._check_dim(points)
        out = np.empty(points.shape[0], dtype=np.int8)
        stack = [(0, np.arange(points.shape[0]))]
        while stack:
            nid, idx = stack.pop()
            if idx.size == 0:
                continue
            feat = self.feature[nid]
            if feat < 0:
                out[idx] = self.leaf_label[nid]
                continue
            go_left = points[idx, feat] < self.threshold[nid]
            stack.append((int(self.left[nid]), idx[go_left]))
            stack.append((int(self.right[nid]), idx[~go_left]))
        return int(out[0]) if single else out

    def to_node_dict(self) -> dict:
        """Nested node records (used by the serialization format)."""
        built: list[dict | None] = [None] * self.n_nodes
        for nid in reversed(range(self.n_nodes)):
            if self.feature[nid] < 0:
                built[nid] = {"leaf": int(self.leaf_label[nid])}
            else:
                built[nid] = {
                    "split": {
                        "feature": int(self.feature[nid]),
                        "threshold": float(self.threshold[nid]),
                    },
                    "left": built[int(self.left[nid])],
                    "right": built[int(self.right[nid])],
                }
        return built[0]

    @classmethod
    def from_node_dict(cls, root: dict, n_features: int) -> "DecisionTree":
        feature, threshold, left, right, leaf = [], [], [], [], []

        def alloc():
            feature.append(-1)
            threshold.append(np.nan)
            left.append(-1)
            right.append(-1)
            leaf.append(0)
            return len(feature) - 1

        depth_max = 0
        stack = [(root, alloc(), 0)]
        while stack:
            node, nid, depth = stack.pop()
            depth_max = max(depth_max, depth)
            if "leaf" in node:
                label = int(node["leaf"])
                if label not in (-1, 1):
                    raise ValueError(f"leaf label must be -1 or +1, got {label}")
                leaf[nid] = label
            else:
                feature[nid] = int(node["split"]["feature"])
                threshold[nid] = float(node["split"]["threshold"])
                left[nid] = alloc()
                right[nid] = alloc()
                stack.append((node["left"], left[nid], depth + 1))
                stack.append((node["right"], right[nid], depth + 1))
        return cls(feature, threshold, left, right, leaf, n_features, depth_max)

    def structurally_equal(self, other: "DecisionTree") -> bool:
        """Bit-exact node-by-node comparison, threshold floats included."""
        if self.n_features != other.n_features or self.n_nodes != other.n_nodes:
            return False
        same_thr = np.array_equal(self.threshold, other.threshold, equal_nan=True)
        return bool(
            same_thr
            and np.array_equal(self.feature, other.feature)
            and np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
            and np.array_equal(self.leaf_label, other.leaf_label)
        )


@dataclass(frozen=True, eq=False)
class BoostModel:
    """Ordered (coefficient, tree) stages; prediction is the sign of the
    stage-weighted vote, with the +1 tie rule at exactly zero."""

    alphas: np.ndarray
    trees: tuple[DecisionTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", np.asarray(self.alphas, dtype=np.float64))
        object.__setattr__(self, "trees", tuple(self.trees))
        if len(self.alphas) != len(self.trees) or len(self.trees) < 1:
            raise ValueError("need one coefficient per tree, at least one stage")
        dims = {t.n_features for t in self.trees}
        if len(dims) != 1:
            raise ValueError("all stage trees must share one feature dimension")

    @property
    def rounds(self) -> int:
        return len(self.trees)

    @property
    def n_features(self) -> int:
        return self.trees[0].n_features

    def _resolve_prefix(self, upto: int | None) -> int:
        if upto is None:
            return self.rounds
        if not 1 <= upto <= self.rounds:
            raise ValueError(f"prefix must be in [1, {self.rounds}], got {upto}")
        return int(upto)

    def margin(self, points, upto: int | None = None):
        """Weighted vote sum of the first ``upto`` stages (default: all)."""
        upto = self._resolve_prefix(upto)
        points = np.asarray(points, dtype=np.float64)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        total = np.zeros(points.shape[0])
        for alpha, tree in zip(self.alphas[:upto], self.trees[:upto]):
            total += alpha * tree.predict(points)
        return float(total[0]) if single else total

    def predict(self, points, upto: int | None = None):
        m = self.margin(points, upto)
        if np.isscalar(m) or np.ndim(m) == 0:
            return -1 if m < 0 else TIE_LABEL
        return sign_labels(m)

    def stage_predictions(self, points) -> np.ndarray:
        """(rounds, n_points) int8 matrix of raw tree labels, one row per stage."""
        points = np.asarray(points, dtype=np.float64)
        out = np.empty((self.rounds, points.shape[0]), dtype=np.int8)
        for m, tree in enumerate(self.trees):
            out[m] = tree.predict(points)
        return out

    def truncated(self, upto: int) -> "BoostModel":
        upto = self._resolve_prefix(upto)
        return BoostModel(self.alphas[:upto].copy(), self.trees[:upto])


@dataclass(frozen=True, eq=False)
class ForestModel:
    """Bagged trees with retained bootstrap index records; majority vote."""

    trees: tuple[DecisionTree, ...]
    bootstrap_indices: np.ndarray   # (n_trees, n_rows) int64
    m_try: int
    tree_seeds: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(
            self, "bootstrap_indices", np.asarray(self.bootstrap_indices, dtype=np.int64)
        )
        object.__setattr__(self, "tree_seeds", tuple(int(s) for s in self.tree_seeds))
        if len(self.trees) < 1:
            raise ValueError("forest needs at least one tree")
        if self.bootstrap_indices.shape[0] != len(self.trees):
            raise ValueError("one bootstrap index row per tree required")
        if len(self.tree_seeds) != len(self.trees):
            raise ValueError("one seed per tree required")

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    @property
    def n_features(self) -> int:
        return self.trees[0].n_features

    def vote_sum(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[None, :]
        total = np.zeros(points.shape[0], dtype=np.int32)
        for tree in self.trees:
            total += tree.predict(points)
        return total

    def predict(self, points):
        points = np.asarray(points, dtype=np.float64)
        single = points.ndim == 1
        total = self.vote_sum(points)
        labels = sign_labels(total)
        return int(labels[0]) if single else labels

    def vote_counts(self, point) -> tuple[int, int]:
        """(plus votes, minus votes) at a single point."""
        total = int(self.vote_sum(point)[0])
        plus = (self.n_trees + total) // 2
        return plus, self.n_trees - plus
