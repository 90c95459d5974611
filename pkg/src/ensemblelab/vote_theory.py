"""Exact probability machinery for integer-weighted majority votes.

Setting: n voters answer independently and each is correct with probability
p > 1/2; voter i carries a non-negative integer weight z_i, the weights sum
to an odd total M <= n, and the vote succeeds when the correct side's weight
exceeds M/2.  The claim verified here is that the success probability is at
least p for *every* weight vector, with the degenerate vector (all weight on
one voter) attaining exactly p.

Probabilities are computed in exact rational arithmetic (``fractions``) so
the boundary case "exactly p" is decided without floating-point ambiguity;
a float dynamic program over achievable weight sums provides the scalable
cross-check.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

_ENUMERATION_LIMIT = 24  # 2^k subset walks beyond this are not worth exactness


def _as_probability(p) -> Fraction:
    value = Fraction(p)
    if not Fraction(1, 2) < value < 1:
        raise ValueError(f"p must lie in (1/2, 1), got {p}")
    return value


@dataclass(frozen=True)
class VoteInstance:
    """Integer weight vector with odd total M <= n and success probability p."""

    weights: tuple[int, ...]
    p: Fraction

    def __post_init__(self):
        weights = tuple(int(z) for z in self.weights)
        if len(weights) < 1:
            raise ValueError("need at least one weight")
        if any(z < 0 for z in weights):
            raise ValueError("weights must be non-negative integers")
        total = sum(weights)
        if total % 2 != 1:
            raise ValueError(f"total weight must be odd, got {total}")
        if total > len(weights):
            raise ValueError(f"total weight {total} exceeds the {len(weights)} voters")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "p", _as_probability(self.p))

    @property
    def total(self) -> int:
        return sum(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights)


def majority_probability(instance: VoteInstance) -> Fraction:
    """Exact Pr{weighted correct mass > M/2} by subset enumeration.

    Zero-weight voters marginalize out, so the walk covers only the nonzero
    weights (at most ``_ENUMERATION_LIMIT`` of them).
    """
    nonzero = [z for z in instance.weights if z > 0]
    if len(nonzero) > _ENUMERATION_LIMIT:
        raise ValueError(
            f"{len(nonzero)} nonzero weights exceed the enumeration limit "
            f"{_ENUMERATION_LIMIT}; use majority_probability_dp"
        )
    p = instance.p
    q = 1 - p
    half = Fraction(instance.total, 2)
    total = Fraction(0)
    k = len(nonzero)
    for outcome in product((0, 1), repeat=k):
        if sum(z for z, y in zip(nonzero, outcome) if y) > half:
            ones = sum(outcome)
            total += p**ones * q ** (k - ones)
    return total


def majority_probability_dp(instance: VoteInstance) -> float:
    """Same probability via a float convolution over achievable weight sums."""
    p = float(instance.p)
    dist = [1.0]  # dist[s] = Pr{correct mass == s} over voters seen so far
    for z in instance.weights:
        if z == 0:
            continue
        new = [0.0] * (len(dist) + z)
        for s, mass in enumerate(dist):
            if mass:
                new[s] += mass * (1.0 - p)
                new[s + z] += mass * p
        dist = new
    threshold = instance.total / 2.0
    return float(sum(mass for s, mass in enumerate(dist) if s > threshold))


def partitions_at_most(total: int, max_parts: int):
    """Partitions of ``total`` into at most ``max_parts`` parts, as
    non-increasing tuples in descending lexicographic order."""

    def rec(remaining, cap, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    yield from rec(total, total, max_parts)


def composition_count(partition: tuple[int, ...], n: int) -> int:
    """Number of length-n compositions (ordered weight vectors) that sort to
    the given partition, zero-padding included."""
    padded = Counter(partition)
    padded[0] += n - len(partition)
    count = math.factorial(n)
    for mult in padded.values():
        count //= math.factorial(mult)
    return count


@dataclass(frozen=True)
class TheoremCase:
    n: int
    total: int
    p: Fraction
    weights: tuple[int, ...]
    probability: Fraction
    compositions: int

    @property
    def margin(self) -> Fraction:
        return self.probability - self.p


@dataclass(frozen=True)
class TheoremReport:
    n_max: int
    cases: tuple[TheoremCase, ...]
    violations: tuple[TheoremCase, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def extremes(self) -> dict[tuple[int, int, Fraction], tuple[TheoremCase, TheoremCase]]:
        """(min, max) probability case per (n, M, p) group; first hit wins
        ties, so the degenerate vector reports as the minimizer."""
        groups: dict[tuple[int, int, Fraction], tuple[TheoremCase, TheoremCase]] = {}
        for case in self.cases:
            key = (case.n, case.total, case.p)
            if key not in groups:
                groups[key] = (case, case)
                continue
            lo, hi = groups[key]
            if case.probability < lo.probability:
                lo = case
            if case.probability > hi.probability:
                hi = case
            groups[key] = (lo, hi)
        return groups


def verify_theorem_a(n_max: int, p_values, totals=None) -> TheoremReport:
    """Check the majority bound over every weight composition, exhaustively.

    For each n <= n_max, each odd total M <= n (or the supplied totals), and
    each p, every partition of M into at most n parts is evaluated exactly;
    permutations are covered by symmetry and reported via composition counts.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    probabilities = [_as_probability(p) for p in p_values]
    cases: list[TheoremCase] = []
    violations: list[TheoremCase] = []
    for n in range(1, n_max + 1):
        wanted = totals if totals is not None else range(1, n + 1, 2)
        for total in wanted:
            if total > n or total % 2 == 0 or total < 1:
                continue
            for partition in partitions_at_most(total, n):
                padded = partition + (0,) * (n - len(partition))
                for p in probabilities:
                    instance = VoteInstance(padded, p)
                    prob = majority_probability(instance)
                    case = TheoremCase(
                        n, total, p, partition, prob, composition_count(partition, n)
                    )
                    cases.append(case)
                    if prob < p:
                        violations.append(case)
    return TheoremReport(n_max, tuple(cases), tuple(violations))


class MassShiftViolation(AssertionError):
    """A structural fact from the mass-shift argument failed to hold."""


@dataclass(frozen=True)
class MassShiftResult:
    pr_original: Fraction
    pr_shifted: Fraction
    b1_size: int
    b2_size: int


def mass_shift_check(weights, alpha: int, beta: int, p) -> MassShiftResult:
    """Exactly compare the vote before and after moving ``beta`` units of the
    first weight onto the empty second coordinate.

    The original vector must have ``weights[0] == alpha + beta`` and
    ``weights[1] == 0`` with ``alpha >= beta >= 0``.  Verifies, by full
    enumeration of outcome vectors, that the shift cannot lower the success
    probability and that the two disagreement sets have equal size with the
    expected coordinate pattern.
    """
    weights = tuple(int(z) for z in weights)
    if len(weights) < 2:
        raise ValueError("need at least two coordinates")
    if not (alpha >= beta >= 0) or alpha + beta < 1:
        raise ValueError("require alpha >= beta >= 0 with alpha + beta >= 1")
    if weights[0] != alpha + beta or weights[1] != 0:
        raise ValueError("weights must start (alpha + beta, 0, ...)")
    if len(weights) > _ENUMERATION_LIMIT:
        raise ValueError("too many coordinates for full enumeration")
    shifted = (alpha, beta) + weights[2:]
    instance = VoteInstance(weights, p)  # validates total odd, <= n, p range
    VoteInstance(shifted, p)
    p = instance.p
    q = 1 - p
    half = Fraction(instance.total, 2)

    pr_original = Fraction(0)
    pr_shifted = Fraction(0)
    b1_size = 0
    b2_size = 0
    n = len(weights)
    for outcome in product((0, 1), repeat=n):
        mass = p ** sum(outcome) * q ** (n - sum(outcome))
        in_a = sum(z * y for z, y in zip(weights, outcome)) > half
        in_a_shift = sum(z * y for z, y in zip(shifted, outcome)) > half
        if in_a:
            pr_original += mass
        if in_a_shift:
            pr_shifted += mass
        if in_a_shift and not in_a:
            b1_size += 1
            if not (outcome[0] == 0 and outcome[1] == 1):
                raise MassShiftViolation(
                    f"gained outcome {outcome} should have y1=0, y2=1"
                )
        if in_a and not in_a_shift:
            b2_size += 1
            if not (outcome[0] == 1 and outcome[1] == 0):
                raise MassShiftViolation(
                    f"lost outcome {outcome} should have y1=1, y2=0"
                )
    if b1_size != b2_size:
        raise MassShiftViolation(f"|B1|={b1_size} differs from |B2|={b2_size}")
    if pr_shifted < pr_original:
        raise MassShiftViolation(
            f"shift lowered the success probability: {pr_shifted} < {pr_original}"
        )
    return MassShiftResult(pr_original, pr_shifted, b1_size, b2_size)
