"""AdaBoost over weighted trees, with prefix and block access.

The fit follows the classical discrete recipe: fit a tree to the current
weights, compute its weighted error, give it coefficient
``log((1 - err) / err)``, and multiply the weights of the points it missed
by ``exp(coefficient)``.  Weights are renormalized to sum one each round so
thousand-round runs cannot overflow, and the loop never stops early: the
whole point of the experiments here is behavior long after training error
reaches zero.

A weighted error of exactly zero (or >= 1/2) is clamped into
``[err_clamp, 1 - err_clamp]`` so the coefficient stays finite and fitting
continues; the clamp constant is an implementation choice, not a derived
quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import rng
from .datatypes import BoostModel, LabeledDataset, sign_labels
from .tree import TreeConfig, _fit_arrays


@dataclass(frozen=True)
class BoostConfig:
    rounds: int
    tree: TreeConfig
    err_clamp: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not 0.0 < self.err_clamp < 0.5:
            raise ValueError("err_clamp must lie in (0, 0.5)")


@dataclass(frozen=True)
class StageRecord:
    """One fit round: weighted error before clamping, coefficient, and the
    training error of the ensemble prefix ending at this round."""

    round: int
    weighted_error: float
    alpha: float
    training_error: float


def adaboost_fit(
    data: LabeledDataset, config: BoostConfig, trace: list[StageRecord] | None = None
) -> BoostModel:
    """Run the boosting loop for exactly ``config.rounds`` stages.

    The dataset must be unweighted: the algorithm owns its observation
    weights, starting uniform at 1/n.  Pass a list as ``trace`` to collect a
    StageRecord per round.
    """
    if data.weights is not None:
        raise ValueError("boosting owns its weights; pass an unweighted dataset")
    X, y = data.features, data.labels
    n = data.n_points
    w = np.full(n, 1.0 / n)
    running_margin = np.zeros(n)
    alphas: list[float] = []
    trees = []
    for m in range(config.rounds):
        stage_tree_cfg = replace(
            config.tree, seed=rng.derive_seed(config.seed, rng.TREE, m)
        )
        tree = _fit_arrays(X, y, w, stage_tree_cfg)
        pred = tree.predict(X)
        miss = pred != y
        err = float(w[miss].sum())  # w sums to one by construction
        err_clamped = min(max(err, config.err_clamp), 1.0 - config.err_clamp)
        alpha = math.log((1.0 - err_clamped) / err_clamped)
        w = w * np.exp(alpha * miss)
        w /= w.sum()
        alphas.append(alpha)
        trees.append(tree)
        if trace is not None:
            running_margin += alpha * pred
            train_err = float(np.mean(sign_labels(running_margin) != y))
            trace.append(StageRecord(m + 1, err, alpha, train_err))
    return BoostModel(np.array(alphas), tuple(trees))


def training_error(data: LabeledDataset, model: BoostModel, upto: int | None = None) -> float:
    """Fraction of training points misclassified by the prefix ensemble."""
    return float(np.mean(model.predict(data.features, upto=upto) != data.labels))


def staged_training_errors(data: LabeledDataset, model: BoostModel) -> np.ndarray:
    """Training error of every prefix, one entry per round."""
    contrib = model.alphas[:, None] * model.stage_predictions(data.features)
    margins = np.cumsum(contrib, axis=0)
    return np.mean(sign_labels(margins) != data.labels[None, :], axis=1)


def first_interpolation_round(data: LabeledDataset, model: BoostModel) -> int | None:
    """First round whose prefix classifies all training points correctly."""
    errors = staged_training_errors(data, model)
    hits = np.flatnonzero(errors == 0.0)
    return int(hits[0]) + 1 if hits.size else None


@dataclass(frozen=True, eq=False)
class BlockClassifier:
    """Classifier built from one contiguous block of boosting stages.

    Block ``j`` (1-based) of a model cut into blocks of ``block_size`` stages
    consists of stages ``(j-1)*block_size + 1 .. j*block_size``; ``length``
    restricts it to the block's first stages.
    """

    model: BoostModel
    block_index: int
    block_size: int
    length: int

    @property
    def start(self) -> int:
        return (self.block_index - 1) * self.block_size

    def margin(self, points):
        points = np.asarray(points, dtype=np.float64)
        single = points.ndim == 1
        if single:
            points = points[None, :]
        total = np.zeros(points.shape[0])
        for m in range(self.start, self.start + self.length):
            total += self.model.alphas[m] * self.model.trees[m].predict(points)
        return float(total[0]) if single else total

    def predict(self, points):
        m = self.margin(points)
        if np.ndim(m) == 0:
            return -1 if m < 0 else 1
        return sign_labels(m)


def block_classifier(
    model: BoostModel, block_index: int, block_size: int, length: int | None = None
) -> BlockClassifier:
    """The classifier of block ``block_index`` truncated to ``length`` stages."""
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    if length is None:
        length = block_size
    if not 1 <= length <= block_size:
        raise ValueError(f"length must be in [1, {block_size}], got {length}")
    start = (block_index - 1) * block_size
    if block_index < 1 or start + length > model.rounds:
        raise ValueError(
            f"block {block_index} with {length} stages exceeds the model's "
            f"{model.rounds} rounds"
        )
    return BlockClassifier(model, block_index, block_size, length)
