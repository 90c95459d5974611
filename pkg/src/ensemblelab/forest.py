"""Random forests: bootstrap rows, per-node random feature subsets, majority vote.

Trees are grown to purity by default (minimum node size one), which makes
each tree interpolate its bootstrap sample; the vote over many such trees
still labels essentially every training point correctly while smoothing the
surface elsewhere.  Bootstrap index lists and per-tree seeds are retained on
the model so any run can be replayed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import rng
from .datatypes import ForestModel, LabeledDataset
from .tree import FULL_DEPTH, TreeConfig, _fit_arrays


def _default_tree() -> TreeConfig:
    return TreeConfig(max_depth=FULL_DEPTH, min_node_size=1, m_try=None)


@dataclass(frozen=True)
class ForestConfig:
    """``m_try=None`` on the tree config resolves to ceil(sqrt(d)) at fit time."""

    n_trees: int = 500
    tree: TreeConfig = field(default_factory=_default_tree)
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")


def forest_fit(
    data: LabeledDataset, config: ForestConfig, bootstrap: bool = True
) -> ForestModel:
    """Fit ``n_trees`` trees, each on its own with-replacement row sample.

    ``bootstrap=False`` is a test hook that fits every tree on the identity
    sample instead.
    """
    if data.weights is not None:
        raise ValueError("forest fitting expects an unweighted dataset")
    X, y = data.features, data.labels
    n, d = X.shape
    m_try = config.tree.m_try if config.tree.m_try is not None else math.isqrt(d - 1) + 1
    if m_try > d:
        raise ValueError(f"m_try={m_try} exceeds feature count {d}")

    trees = []
    all_indices = np.empty((config.n_trees, n), dtype=np.int64)
    seeds = []
    ones = np.ones(n)
    for b in range(config.n_trees):
        if bootstrap:
            idx = rng.stream(config.seed, rng.BOOTSTRAP, b).integers(0, n, size=n)
        else:
            idx = np.arange(n)
        tree_seed = rng.derive_seed(config.seed, rng.TREE, b)
        cfg = replace(config.tree, m_try=m_try, seed=tree_seed)
        trees.append(_fit_arrays(X[idx], y[idx], ones, cfg))
        all_indices[b] = idx
        seeds.append(tree_seed)
    return ForestModel(tuple(trees), all_indices, m_try, tuple(seeds))


def forest_vote(model: ForestModel, point) -> tuple[int, tuple[int, int]]:
    """Majority-vote label at one point plus the (plus, minus) vote counts.

    An even split resolves to +1, matching the global tie rule.
    """
    plus, minus = model.vote_counts(point)
    return (1 if plus >= minus else -1), (plus, minus)
