"""Weighted top-down induction of axis-aligned binary trees.

Split candidates are restricted to midpoints between consecutive distinct
observed feature values, and the chosen split minimizes weighted Gini
impurity of the induced children.  Splitting continues while a valid
candidate exists: a node stops only when it is pure (in weight), at the
depth cap, too small to give both children ``min_node_size`` points, or
when no feature in the allowed subset has two distinct values.  Zero-gain
splits are permitted; they are what lets deep trees isolate every training
point.

Ties between candidate splits are broken by lower feature index, then lower
threshold.  Zero-weight points are routed during training but contribute
nothing to impurity or leaf labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datatypes import DecisionTree, LabeledDataset

# Effectively unlimited for every dataset size in this package; keeps the
# depth field an honest integer bound.
FULL_DEPTH = 255


@dataclass(frozen=True)
class TreeConfig:
    """Controls for one tree fit.

    ``m_try=None`` means every feature is eligible at every node; otherwise a
    fresh subset of ``m_try`` features is sampled (without replacement) at
    each node that attempts a split.  ``max_depth=1`` yields a stump.
    """

    max_depth: int
    min_node_size: int = 1
    m_try: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.min_node_size < 1:
            raise ValueError("min_node_size must be >= 1")
        if self.m_try is not None and self.m_try < 1:
            raise ValueError("m_try must be >= 1 when given")


def candidate_midpoints(values) -> np.ndarray:
    """Midpoints of consecutive distinct values; empty if all values equal."""
    values = np.asarray(values, dtype=np.float64)
    if values.size < 1:
        raise ValueError("need at least one value")
    distinct = np.unique(values)
    return (distinct[:-1] + distinct[1:]) / 2.0


def weighted_gini(left: tuple[float, float], right: tuple[float, float]) -> float:
    """Weighted Gini impurity of a two-child split.

    Each child is given as a ``(plus_weight, minus_weight)`` pair.  Returns
    ``sum_children (W_c / W) * (1 - sum_labels (W_label / W_c)^2)``; an
    empty-weight child contributes zero.  Lower is better.
    """
    lp, lm = float(left[0]), float(left[1])
    rp, rm = float(right[0]), float(right[1])
    if min(lp, lm, rp, rm) < 0:
        raise ValueError("label weights must be non-negative")
    wl, wr = lp + lm, rp + rm
    total = wl + wr
    if total <= 0:
        raise ValueError("at least one child must carry weight")
    impurity = 0.0
    for plus, w in ((lp, wl), (rp, wr)):
        if w > 0:
            impurity += (w / total) * (1.0 - (plus / w) ** 2 - ((w - plus) / w) ** 2)
    return impurity


def _child_gini_sums(plus: np.ndarray, minus: np.ndarray) -> np.ndarray:
    # 2*P*N/(P+N) == W * (1 - (P/W)^2 - (N/W)^2); zero-weight child -> 0.
    w = plus + minus
    with np.errstate(invalid="ignore", divide="ignore"):
        g = 2.0 * plus * minus / w
    return np.where(w > 0, g, 0.0)


def _best_split(X, idx, feats, w_plus, w_minus, min_node_size):
    """Best (feature, threshold) over midpoint candidates, or None.

    Vectorized over the candidate features: one argsort per node covers all
    columns, cumulative label-weight sums give every split's impurity, and
    argmin's first-hit semantics implement the (feature, threshold)
    tie-break.
    """
    sub = X[np.ix_(idx, feats)]
    m, k = sub.shape
    order = np.argsort(sub, axis=0, kind="stable")
    xs = np.take_along_axis(sub, order, axis=0)
    cum_plus = np.cumsum(w_plus[idx][order], axis=0)
    cum_minus = np.cumsum(w_minus[idx][order], axis=0)

    left_plus = cum_plus[:-1]
    left_minus = cum_minus[:-1]
    right_plus = cum_plus[-1] - left_plus
    right_minus = cum_minus[-1] - left_minus
    score = _child_gini_sums(left_plus, left_minus) + _child_gini_sums(
        right_plus, right_minus
    )

    left_counts = np.arange(1, m)[:, None]
    valid = (
        (xs[1:] > xs[:-1])
        & (left_counts >= min_node_size)
        & ((m - left_counts) >= min_node_size)
    )
    score = np.where(valid, score, np.inf)

    best_pos = np.argmin(score, axis=0)
    per_feature = score[best_pos, np.arange(k)]
    j = int(np.argmin(per_feature))
    if not np.isfinite(per_feature[j]):
        return None
    i = int(best_pos[j])
    threshold = 0.5 * (xs[i, j] + xs[i + 1, j])
    return int(feats[j]), float(threshold)


def _fit_arrays(X, y, w, config: TreeConfig) -> DecisionTree:
    n, d = X.shape
    if config.m_try is not None and config.m_try > d:
        raise ValueError(f"m_try={config.m_try} exceeds feature count {d}")
    m_try = config.m_try if config.m_try is not None else d
    gen = np.random.default_rng(config.seed)

    w_plus = np.where(y > 0, w, 0.0)
    w_minus = np.where(y < 0, w, 0.0)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    leaf: list[int] = []

    def alloc() -> int:
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        leaf.append(0)
        return len(feature) - 1

    depth_seen = 0
    stack = [(alloc(), np.arange(n), 0)]
    while stack:
        nid, idx, depth = stack.pop()
        depth_seen = max(depth_seen, depth)
        pos = w_plus[idx].sum()
        neg = w_minus[idx].sum()
        label = 1 if pos >= neg else -1
        if (
            min(pos, neg) == 0.0
            or depth >= config.max_depth
            or idx.size < 2 * config.min_node_size
        ):
            leaf[nid] = label
            continue
        if m_try < d:
            feats = np.sort(gen.choice(d, size=m_try, replace=False))
        else:
            feats = np.arange(d)
        found = _best_split(X, idx, feats, w_plus, w_minus, config.min_node_size)
        if found is None:
            leaf[nid] = label
            continue
        feat, thr = found
        go_left = X[idx, feat] < thr
        lid, rid = alloc(), alloc()
        feature[nid] = feat
        threshold[nid] = thr
        left[nid] = lid
        right[nid] = rid
        # Right pushed first so the left child is processed next; node-subset
        # draws therefore happen in preorder, fixing the RNG consumption order.
        stack.append((rid, idx[~go_left], depth + 1))
        stack.append((lid, idx[go_left], depth + 1))

    return DecisionTree(feature, threshold, left, right, leaf, d, depth_seen)


def fit_tree(data: LabeledDataset, config: TreeConfig) -> DecisionTree:
    """Grow a tree on (optionally weighted) data.

    The leaf label is the sign of the weighted label sum (tie -> +1).  Both
    children of any split receive at least ``min_node_size`` training points,
    counting zero-weight points.
    """
    w = data.weights if data.weights is not None else np.ones(data.n_points)
    return _fit_arrays(data.features, data.labels, w, config)
