"""Experiment metrics: interpolation checks, Bayes agreement, decision-surface
grids, prefix/block curves, and the closed-form error rates.

Classifiers enter these functions as plain callables mapping an (m, d) point
matrix to -1/+1 labels, so every model type (and the Bayes rule itself) is
measured through one interface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .boosting import block_classifier
from .datatypes import BoostModel, DecisionTree, LabeledDataset, sign_labels
from .labels import LabelModel, bayes_labels


@dataclass(frozen=True)
class EvaluationReport:
    """One classifier's scorecard on one experiment."""

    classifier_id: str
    training_error: float | None = None
    holdout_bayes_disagreement: float | None = None
    holdout_label_error: float | None = None
    plus_fraction: float | None = None
    interpolates: bool | None = None

    def __post_init__(self):
        for name in (
            "training_error",
            "holdout_bayes_disagreement",
            "holdout_label_error",
            "plus_fraction",
        ):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a fraction in [0, 1], got {value}")


def is_interpolating(predict, data: LabeledDataset) -> bool:
    """True iff every training point receives its own label."""
    return bool(np.all(predict(data.features) == data.labels))


def bayes_disagreement(predict, model: LabelModel, points) -> float:
    """Fraction of points where the classifier differs from the Bayes rule."""
    points = np.asarray(points, dtype=np.float64)
    if points.shape[0] < 1:
        raise ValueError("need at least one evaluation point")
    return float(np.mean(predict(points) != bayes_labels(model, points)))


def label_error(predict, data: LabeledDataset) -> float:
    """Misclassification rate against realized labels (Bayes error included)."""
    return float(np.mean(predict(data.features) != data.labels))


def grid_centers(resolution: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    return lo + (np.arange(resolution) + 0.5) * (hi - lo) / resolution


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """Labels at the cell centers of a square 2-D grid.

    ``labels[i, j]`` is the prediction at (x1 = centers[j], x2 = centers[i]);
    row index follows the second feature.
    """

    labels: np.ndarray
    lo: float
    hi: float

    @property
    def resolution(self) -> int:
        return self.labels.shape[0]

    @property
    def plus_fraction(self) -> float:
        return float(np.mean(self.labels == 1))

    @property
    def minus_fraction(self) -> float:
        return float(np.mean(self.labels == -1))


def surface_grid(predict, resolution: int, lo: float = 0.0, hi: float = 1.0) -> SurfaceGrid:
    """Evaluate a planar classifier at every cell center of an r x r grid."""
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    centers = grid_centers(resolution, lo, hi)
    x1, x2 = np.meshgrid(centers, centers)
    mesh = np.column_stack([x1.ravel(), x2.ravel()])
    labels = np.asarray(predict(mesh), dtype=np.int8).reshape(resolution, resolution)
    return SurfaceGrid(labels, lo, hi)


def _tree_grid_add(tree: DecisionTree, value: float, acc: np.ndarray, centers: np.ndarray):
    # Trees split grid index ranges exactly: cells with center < threshold go
    # left, matching the routing rule, so each cell is touched once per tree.
    r = len(centers)
    stack = [(0, 0, r, 0, r)]
    while stack:
        nid, i0, i1, j0, j1 = stack.pop()
        if i0 >= i1 or j0 >= j1:
            continue
        feat = tree.feature[nid]
        if feat < 0:
            acc[i0:i1, j0:j1] += value * tree.leaf_label[nid]
            continue
        cut = int(np.searchsorted(centers, tree.threshold[nid], side="left"))
        if feat == 0:
            cut = min(max(cut, j0), j1)
            stack.append((int(tree.left[nid]), i0, i1, j0, cut))
            stack.append((int(tree.right[nid]), i0, i1, cut, j1))
        else:
            cut = min(max(cut, i0), i1)
            stack.append((int(tree.left[nid]), i0, cut, j0, j1))
            stack.append((int(tree.right[nid]), cut, i1, j0, j1))


def tree_ensemble_grid(
    trees, values, resolution: int, lo: float = 0.0, hi: float = 1.0
) -> SurfaceGrid:
    """Fast exact surface grid for weighted votes of planar trees.

    Equivalent to ``surface_grid`` on the ensemble's sign, but walks grid
    index ranges instead of routing every point; used for the 400x400
    renders where generic routing would dominate runtime.
    """
    centers = grid_centers(resolution, lo, hi)
    acc = np.zeros((resolution, resolution))
    for tree, value in zip(trees, values):
        if tree.n_features != 2:
            raise ValueError("grid evaluation requires planar trees")
        _tree_grid_add(tree, float(value), acc, centers)
    return SurfaceGrid(sign_labels(acc), lo, hi)


def minus_region_jaccard(a: SurfaceGrid, b: SurfaceGrid) -> float:
    """Jaccard overlap of the two grids' -1 regions (1.0 when both empty)."""
    if a.labels.shape != b.labels.shape:
        raise ValueError("grids must share a resolution")
    am, bm = a.labels == -1, b.labels == -1
    union = int(np.sum(am | bm))
    if union == 0:
        return 1.0
    return float(np.sum(am & bm) / union)


def iteration_schedule(total: int, dense_until: int = 100, step: int = 10) -> list[int]:
    """Every round up to ``dense_until``, then every ``step``-th, always
    ending at ``total``."""
    points = list(range(1, min(dense_until, total) + 1))
    nxt = dense_until + step
    while nxt <= total:
        points.append(nxt)
        nxt += step
    if points[-1] != total:
        points.append(total)
    return points


def staged_disagreement(
    model: BoostModel, points, reference_labels, schedule: list[int] | None = None
) -> tuple[list[int], np.ndarray]:
    """Disagreement of each prefix classifier with fixed reference labels.

    Returns the evaluated schedule and one disagreement value per entry; the
    margin is accumulated stage by stage so memory stays O(n_points).
    """
    if schedule is None:
        schedule = iteration_schedule(model.rounds)
    if not schedule or schedule != sorted(schedule):
        raise ValueError("schedule must be non-empty and ascending")
    if schedule[0] < 1 or schedule[-1] > model.rounds:
        raise ValueError("schedule entries must lie in [1, rounds]")
    points = np.asarray(points, dtype=np.float64)
    reference = np.asarray(reference_labels)
    margin = np.zeros(points.shape[0])
    wanted = set(schedule)
    out = np.empty(len(schedule))
    k = 0
    for m in range(1, schedule[-1] + 1):
        margin += model.alphas[m - 1] * model.trees[m - 1].predict(points)
        if m in wanted:
            out[k] = float(np.mean(sign_labels(margin) != reference))
            k += 1
    return schedule, out


def localization_curve(
    model: BoostModel,
    neighbor_points,
    label_model: LabelModel,
    schedule: list[int] | None = None,
) -> tuple[list[int], np.ndarray]:
    """Bayes disagreement of prefix classifiers on a neighbor holdout."""
    reference = bayes_labels(label_model, neighbor_points)
    return staged_disagreement(model, neighbor_points, reference, schedule)


@dataclass(frozen=True, eq=False)
class DecompositionCurves:
    """Per-block holdout curves of a blocked boosting model.

    ``disagreement[j, k]`` is the Bayes disagreement of block j+1 truncated to
    its first k+1 stages; ``interpolates`` flags blocks that fit the training
    data perfectly at full length (when training data was supplied).
    """

    block_size: int
    disagreement: np.ndarray
    interpolates: np.ndarray | None


def decomposition_curves(
    model: BoostModel,
    block_size: int,
    label_model: LabelModel,
    points,
    train: LabeledDataset | None = None,
) -> DecompositionCurves:
    if block_size < 1 or model.rounds % block_size != 0:
        raise ValueError(
            f"block_size must divide the model's {model.rounds} rounds, got {block_size}"
        )
    n_blocks = model.rounds // block_size
    points = np.asarray(points, dtype=np.float64)
    reference = bayes_labels(label_model, points)
    contrib = model.alphas[:, None] * model.stage_predictions(points).astype(np.float64)
    disagreement = np.empty((n_blocks, block_size))
    for j in range(n_blocks):
        block = contrib[j * block_size : (j + 1) * block_size]
        margins = np.cumsum(block, axis=0)
        disagreement[j] = np.mean(sign_labels(margins) != reference[None, :], axis=1)

    interpolates = None
    if train is not None:
        interpolates = np.empty(n_blocks, dtype=bool)
        for j in range(n_blocks):
            clf = block_classifier(model, j + 1, block_size)
            interpolates[j] = bool(np.all(clf.predict(train.features) == train.labels))
    return DecompositionCurves(block_size, disagreement, interpolates)


@dataclass(frozen=True)
class ConsistencyRates:
    """Closed-form Bayes-disagreement rates for a constant-noise surface with
    p(+1) = p on n design points in d dimensions."""

    local_rate: float          # best-case local interpolation: (1-p) * n / n^d
    onenn_rate: float          # asymptotic one-nearest-neighbor: 2 p (1-p)
    stump_lower_bound: float   # additive stump ensembles: (1-p)^d (1 - 1/d)^d


def rate_formulas(p: float, n: int, d: int) -> ConsistencyRates:
    if not 0.5 < p < 1.0:
        raise ValueError("p must lie in (0.5, 1)")
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    return ConsistencyRates(
        local_rate=(1.0 - p) * n / float(n) ** d,
        onenn_rate=2.0 * p * (1.0 - p),
        stump_lower_bound=(1.0 - p) ** d * (1.0 - 1.0 / d) ** d,
    )


def paired_one_sided_pvalue(smaller, larger) -> float:
    """p-value of the paired t-test against mean(smaller) < mean(larger)."""
    result = stats.ttest_rel(np.asarray(smaller), np.asarray(larger), alternative="less")
    return float(result.pvalue)
