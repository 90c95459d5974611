"""Synthetic data designs: point layouts, label draws, and holdout samples.

Two layouts: a midpoint Latin hypercube (every column is a random permutation
of the cell midpoints {(2i-1)/(2n)}, so the per-dimension marginals are exact
by construction) and plain iid uniforms.  Labels come either from independent
draws of the model's conditional probabilities or by flipping an exact count
of Bayes labels chosen uniformly without replacement.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import rng
from .datatypes import LabeledDataset
from .labels import LabelModel, bayes_labels

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DesignSpec:
    n: int
    d: int
    scheme: Literal["lhs_midpoint", "iid_uniform"] = "lhs_midpoint"
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be >= 1")
        if self.scheme not in ("lhs_midpoint", "iid_uniform"):
            raise ValueError(f"unknown design scheme: {self.scheme!r}")


def lhs_midpoints(n: int, d: int, gen: np.random.Generator) -> np.ndarray:
    """n x d matrix whose columns are independent permutations of the
    midpoints (2i-1)/(2n)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    mids = (2.0 * np.arange(n) + 1.0) / (2.0 * n)
    return np.column_stack([gen.permutation(mids) for _ in range(d)])


def design_points(spec: DesignSpec) -> np.ndarray:
    gen = rng.stream(spec.seed, rng.DESIGN)
    if spec.scheme == "lhs_midpoint":
        return lhs_midpoints(spec.n, spec.d, gen)
    return gen.random((spec.n, spec.d))


def holdout_points(n: int, d: int, seed: int) -> np.ndarray:
    """iid uniform evaluation points on [0,1]^d."""
    return rng.stream(seed, rng.HOLDOUT).random((n, d))


@dataclass(frozen=True)
class NoiseSpec:
    """How labels are realized from a label model.

    ``bernoulli`` draws each label independently from the model's pointwise
    probability of +1.  ``exact_count`` starts from the Bayes labels and
    flips exactly ``flips`` of them, chosen uniformly without replacement.
    """

    kind: Literal["bernoulli", "exact_count"] = "bernoulli"
    flips: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("bernoulli", "exact_count"):
            raise ValueError(f"unknown noise kind: {self.kind!r}")
        if self.kind == "exact_count":
            if self.flips is None or self.flips < 0:
                raise ValueError("exact_count needs a non-negative flip count")
        elif self.flips is not None:
            raise ValueError("bernoulli noise takes no flip count")


def label_dataset(points, model: LabelModel, noise: NoiseSpec) -> LabeledDataset:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be an (n, d) matrix")
    if np.any(points < 0) or np.any(points > 1):
        raise ValueError("points must lie in the unit cube")
    if points.shape[1] < model.min_features:
        raise ValueError(
            f"model needs at least {model.min_features} features, got {points.shape[1]}"
        )
    n = points.shape[0]
    gen = rng.stream(noise.seed, rng.LABELS)
    if noise.kind == "bernoulli":
        draws = gen.random(n)
        labels = np.where(draws < model.prob_plus(points), 1, -1)
    else:
        if noise.flips > n:
            raise ValueError(f"cannot flip {noise.flips} of {n} labels")
        labels = bayes_labels(model, points).astype(np.int64)
        flip_idx = gen.choice(n, size=noise.flips, replace=False)
        labels[flip_idx] = -labels[flip_idx]
    return LabeledDataset(points, labels)


def neighbor_holdout(data: LabeledDataset, distance: float, seed: int) -> np.ndarray:
    """One point at the given Euclidean distance from each -1-labeled
    training point, in a uniformly random direction.

    Directions are unit-normalized standard-normal vectors.  A candidate
    falling outside the unit cube is re-drawn with a fresh direction
    (clipping would change the distance); redraw totals are logged.
    """
    if distance <= 0:
        raise ValueError("distance must be positive")
    gen = rng.stream(seed, rng.DIRECTIONS)
    sources = data.features[data.labels < 0]
    d = data.n_features
    out = np.empty((sources.shape[0], d))
    redraws = 0
    for i, x in enumerate(sources):
        while True:
            direction = gen.standard_normal(d)
            norm = np.linalg.norm(direction)
            if norm == 0.0:
                redraws += 1
                continue
            candidate = x + distance * direction / norm
            if np.all(candidate >= 0.0) and np.all(candidate <= 1.0):
                out[i] = candidate
                break
            redraws += 1
    log.info(
        "neighbor holdout: %d points at distance %g, %d redraws",
        out.shape[0],
        distance,
        redraws,
    )
    return out
