"""Comparison classifiers: one-nearest-neighbor and CV-pruned CART.

One-NN is the canonical *badly localized* interpolator; the pruned tree is
the canonical classical model of limited complexity.  Both exist to be
measured against the ensemble methods, so they stay deliberately plain:
exact brute-force neighbor search (every benchmark here has n <= 10^4) and
textbook cost-complexity pruning with K-fold cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .datatypes import DecisionTree, LabeledDataset
from .tree import FULL_DEPTH, TreeConfig, fit_tree

_CHUNK_CELLS = 4_000_000  # cap on distance-matrix entries per block


@dataclass(frozen=True, eq=False)
class OneNearestNeighbor:
    """Label of the Euclidean-nearest training point; distance ties go to the
    lowest training index."""

    features: np.ndarray
    labels: np.ndarray

    def predict(self, points):
        points = np.asarray(points, dtype=np.float64)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        if points.shape[1] != self.features.shape[1]:
            raise ValueError(
                f"point dimension {points.shape[1]} != training dimension "
                f"{self.features.shape[1]}"
            )
        n_train = self.features.shape[0]
        chunk = max(1, _CHUNK_CELLS // n_train)
        out = np.empty(points.shape[0], dtype=np.int8)
        for start in range(0, points.shape[0], chunk):
            block = points[start : start + chunk]
            d2 = ((block[:, None, :] - self.features[None, :, :]) ** 2).sum(axis=2)
            out[start : start + chunk] = self.labels[np.argmin(d2, axis=1)]
        return int(out[0]) if single else out


def one_nn_fit(data: LabeledDataset) -> OneNearestNeighbor:
    return OneNearestNeighbor(data.features, data.labels)


@dataclass(frozen=True)
class PruneConfig:
    n_folds: int = 10
    complexity_grid: tuple[float, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n_folds < 2:
            raise ValueError("need at least 2 folds")
        if self.complexity_grid is not None:
            grid = tuple(float(a) for a in self.complexity_grid)
            if any(a < 0 for a in grid):
                raise ValueError("complexity values must be non-negative")
            object.__setattr__(self, "complexity_grid", grid)


def _node_stats(tree: DecisionTree, data: LabeledDataset):
    """Per-node (plus, minus) training counts, by routing every point."""
    plus = np.zeros(tree.n_nodes)
    minus = np.zeros(tree.n_nodes)
    X, y = data.features, data.labels
    stack = [(0, np.arange(data.n_points))]
    while stack:
        nid, idx = stack.pop()
        if idx.size == 0:
            continue
        plus[nid] = np.sum(y[idx] > 0)
        minus[nid] = idx.size - plus[nid]
        feat = tree.feature[nid]
        if feat < 0:
            continue
        go_left = X[idx, feat] < tree.threshold[nid]
        stack.append((int(tree.left[nid]), idx[go_left]))
        stack.append((int(tree.right[nid]), idx[~go_left]))
    return plus, minus


def _collapse_plan(tree: DecisionTree, plus, minus, alpha: float, n_total: int):
    """Bottom-up cost-complexity decision: True where a subtree folds into a leaf.

    A node collapses when its own misclassification cost is no worse than its
    (already-pruned) subtree cost plus ``alpha`` per extra leaf; ties collapse,
    preferring the smaller tree.
    """
    node_cost = np.minimum(plus, minus) / n_total
    sub_cost = node_cost.copy()
    sub_leaves = np.ones(tree.n_nodes, dtype=np.int64)
    collapse = np.zeros(tree.n_nodes, dtype=bool)
    for nid in reversed(range(tree.n_nodes)):
        if tree.feature[nid] < 0:
            continue
        l, r = int(tree.left[nid]), int(tree.right[nid])
        cost = sub_cost[l] + sub_cost[r]
        leaves = sub_leaves[l] + sub_leaves[r]
        if node_cost[nid] <= cost + alpha * (leaves - 1):
            collapse[nid] = True
            sub_cost[nid] = node_cost[nid]
            sub_leaves[nid] = 1
        else:
            sub_cost[nid] = cost
            sub_leaves[nid] = leaves
    return collapse


def _pruned_copy(tree: DecisionTree, plus, minus, collapse) -> DecisionTree:
    feature, threshold, left, right, leaf = [], [], [], [], []

    def alloc():
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        leaf.append(0)
        return len(feature) - 1

    depth_max = 0
    stack = [(0, alloc(), 0)]
    while stack:
        src, dst, depth = stack.pop()
        depth_max = max(depth_max, depth)
        if tree.feature[src] < 0 or collapse[src]:
            leaf[dst] = 1 if plus[src] >= minus[src] else -1
            continue
        feature[dst] = int(tree.feature[src])
        threshold[dst] = float(tree.threshold[src])
        left[dst] = alloc()
        right[dst] = alloc()
        stack.append((int(tree.left[src]), left[dst], depth + 1))
        stack.append((int(tree.right[src]), right[dst], depth + 1))
    return DecisionTree(feature, threshold, left, right, leaf, tree.n_features, depth_max)


def prune_tree(tree: DecisionTree, data: LabeledDataset, alpha: float) -> DecisionTree:
    """Smallest subtree optimal under penalty ``alpha`` per leaf."""
    plus, minus = _node_stats(tree, data)
    collapse = _collapse_plan(tree, plus, minus, alpha, data.n_points)
    return _pruned_copy(tree, plus, minus, collapse)


def _critical_alphas(tree: DecisionTree, data: LabeledDataset) -> list[float]:
    """Weakest-link penalty sequence of the cost-complexity pruning path."""
    plus, minus = _node_stats(tree, data)
    n_total = data.n_points
    node_cost = np.minimum(plus, minus) / n_total
    pruned = tree.feature < 0  # leaves start "pruned"
    alphas: list[float] = []
    while True:
        sub_cost = node_cost.copy()
        sub_leaves = np.ones(tree.n_nodes, dtype=np.int64)
        g = np.full(tree.n_nodes, np.inf)
        for nid in reversed(range(tree.n_nodes)):
            if pruned[nid]:
                continue
            l, r = int(tree.left[nid]), int(tree.right[nid])
            sub_cost[nid] = sub_cost[l] + sub_cost[r]
            sub_leaves[nid] = sub_leaves[l] + sub_leaves[r]
            g[nid] = (node_cost[nid] - sub_cost[nid]) / (sub_leaves[nid] - 1)
        if not np.isfinite(g).any():
            return alphas
        weakest = float(g.min())
        alphas.append(max(weakest, 0.0))
        # Collapse every weakest link, then descendants become irrelevant.
        for nid in np.flatnonzero(g == weakest):
            pruned[nid] = True
        for nid in range(tree.n_nodes):
            if tree.feature[nid] >= 0 and pruned[nid]:
                pruned[int(tree.left[nid])] = True
                pruned[int(tree.right[nid])] = True


def _cv_candidates(alphas: list[float]) -> list[float]:
    if not alphas:
        return [0.0]
    distinct = sorted(set(alphas))
    candidates = [0.0]
    candidates += [
        float(np.sqrt(a * b)) for a, b in zip(distinct[:-1], distinct[1:])
    ]
    candidates.append(distinct[-1] * 1.5 + 1e-12)
    return candidates


def pruned_cart_fit(
    data: LabeledDataset, config: PruneConfig, tree_config: TreeConfig | None = None
) -> DecisionTree:
    """Grow a full tree, then prune at the penalty chosen by cross-validation.

    Candidate penalties default to geometric midpoints of the full tree's own
    critical values.  Ties in cross-validated error go to the larger penalty,
    i.e. the smaller tree.
    """
    if data.n_points < config.n_folds:
        raise ValueError(
            f"cannot run {config.n_folds}-fold CV on {data.n_points} points"
        )
    if tree_config is None:
        tree_config = TreeConfig(max_depth=FULL_DEPTH, min_node_size=1)
    full = fit_tree(data, tree_config)
    if config.complexity_grid is not None:
        candidates = sorted(config.complexity_grid)
    else:
        candidates = _cv_candidates(_critical_alphas(full, data))
    if len(candidates) == 1:
        return prune_tree(full, data, candidates[0])

    perm = rng.stream(config.seed, rng.FOLDS).permutation(data.n_points)
    folds = np.array_split(perm, config.n_folds)
    cv_errors = np.zeros(len(candidates))
    for fold in folds:
        mask = np.ones(data.n_points, dtype=bool)
        mask[fold] = False
        train = LabeledDataset(data.features[mask], data.labels[mask])
        held_X, held_y = data.features[fold], data.labels[fold]
        grown = fit_tree(train, tree_config)
        plus, minus = _node_stats(grown, train)
        for ci, alpha in enumerate(candidates):
            plan = _collapse_plan(grown, plus, minus, alpha, train.n_points)
            pruned = _pruned_copy(grown, plus, minus, plan)
            cv_errors[ci] += int(np.sum(pruned.predict(held_X) != held_y))

    best = 0
    for ci in range(len(candidates)):
        if cv_errors[ci] <= cv_errors[best]:
            best = ci  # ties move to the larger penalty -> smaller tree
    return prune_tree(full, data, candidates[best])
