"""Conditional label models: where the probability of +1 lives.

Three families cover every benchmark in the package: a flat pure-noise
surface, a disc whose interior flips the preferred label, and a two-feature
additive step.  Each model knows its pointwise probability of +1, the
induced Bayes labels, and the exact Bayes error under the uniform design on
the unit cube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _check_prob(name: str, value: float):
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")
    if value == 0.5:
        raise ValueError(f"{name} must not equal 0.5 (Bayes label undefined)")


@dataclass(frozen=True)
class PureNoiseModel:
    """p(y=+1 | x) is a constant: no signal anywhere."""

    p_plus: float

    def __post_init__(self):
        _check_prob("p_plus", self.p_plus)

    min_features = 1

    def prob_plus(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return np.full(points.shape[0], self.p_plus)

    def bayes_error(self) -> float:
        return min(self.p_plus, 1.0 - self.p_plus)

    def to_dict(self) -> dict:
        return {"kind": "pure_noise", "p_plus": self.p_plus}


@dataclass(frozen=True)
class CircleModel:
    """p(y=+1 | x) is one constant inside a disc and another outside.

    The disc lives in the first two feature coordinates and must fit inside
    the unit square so the Bayes error has a closed form.
    """

    center: tuple[float, float] = (0.5, 0.5)
    radius: float = 0.4
    p_inside: float = 0.1
    p_outside: float = 0.9

    def __post_init__(self):
        _check_prob("p_inside", self.p_inside)
        _check_prob("p_outside", self.p_outside)
        cx, cy = self.center
        r = self.radius
        if r <= 0:
            raise ValueError("radius must be positive")
        if min(cx - r, cy - r) < 0 or max(cx + r, cy + r) > 1:
            raise ValueError("disc must lie inside the unit square")

    min_features = 2

    def _inside(self, points) -> np.ndarray:
        dx = points[:, 0] - self.center[0]
        dy = points[:, 1] - self.center[1]
        return dx * dx + dy * dy <= self.radius * self.radius

    def prob_plus(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return np.where(self._inside(points), self.p_inside, self.p_outside)

    def bayes_error(self) -> float:
        area = math.pi * self.radius**2
        return area * min(self.p_inside, 1 - self.p_inside) + (1 - area) * min(
            self.p_outside, 1 - self.p_outside
        )

    def to_dict(self) -> dict:
        return {
            "kind": "circle",
            "center": list(self.center),
            "radius": self.radius,
            "p_inside": self.p_inside,
            "p_outside": self.p_outside,
        }


@dataclass(frozen=True)
class AdditiveStepModel:
    """p(y=+1 | x) steps from ``base`` to ``base + jump`` where the first two
    features sum past one; the remaining features are pure distraction."""

    base: float = 0.2
    jump: float = 0.6

    def __post_init__(self):
        _check_prob("base", self.base)
        _check_prob("base + jump", self.base + self.jump)

    min_features = 2

    def prob_plus(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        high = points[:, 0] + points[:, 1] > 1.0
        return np.where(high, self.base + self.jump, self.base)

    def bayes_error(self) -> float:
        # The step boundary is the main diagonal: each side has measure 1/2.
        low = min(self.base, 1 - self.base)
        high = min(self.base + self.jump, 1 - self.base - self.jump)
        return 0.5 * low + 0.5 * high

    def to_dict(self) -> dict:
        return {"kind": "additive5d", "base": self.base, "jump": self.jump}


LabelModel = PureNoiseModel | CircleModel | AdditiveStepModel


def bayes_labels(model: LabelModel, points) -> np.ndarray:
    """+1 exactly where p(y=+1 | x) > 1/2."""
    return np.where(model.prob_plus(points) > 0.5, 1, -1).astype(np.int8)


def model_from_dict(spec: dict) -> LabelModel:
    kind = spec.get("kind")
    if kind == "pure_noise":
        return PureNoiseModel(float(spec["p_plus"]))
    if kind == "circle":
        return CircleModel(
            tuple(spec.get("center", (0.5, 0.5))),
            float(spec.get("radius", 0.4)),
            float(spec.get("p_inside", 0.1)),
            float(spec.get("p_outside", 0.9)),
        )
    if kind == "additive5d":
        return AdditiveStepModel(float(spec.get("base", 0.2)), float(spec.get("jump", 0.6)))
    raise ValueError(f"unknown label model kind: {kind!r}")


def parse_model_spec(text: str) -> LabelModel:
    """Parse CLI model specs: ``pure_noise:0.8``, ``circle[:p_in,p_out[,r]]``,
    ``additive5d[:base,jump]``."""
    kind, _, arg_text = text.partition(":")
    args = [float(a) for a in arg_text.split(",")] if arg_text else []
    if kind == "pure_noise":
        if len(args) != 1:
            raise ValueError("pure_noise needs exactly one probability, e.g. pure_noise:0.8")
        return PureNoiseModel(args[0])
    if kind == "circle":
        if len(args) == 0:
            return CircleModel()
        if len(args) == 2:
            return CircleModel(p_inside=args[0], p_outside=args[1])
        if len(args) == 3:
            return CircleModel(radius=args[2], p_inside=args[0], p_outside=args[1])
        raise ValueError("circle takes 0, 2, or 3 arguments")
    if kind == "additive5d":
        if len(args) == 0:
            return AdditiveStepModel()
        if len(args) == 2:
            return AdditiveStepModel(args[0], args[1])
        raise ValueError("additive5d takes 0 or 2 arguments")
    raise ValueError(f"unknown label model: {kind!r}")
