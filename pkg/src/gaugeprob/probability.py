"""Finite discrete probability spaces with exact event arithmetic.

Everything here is a finite weighted outcome set, so probabilities,
expectations and moments are exact sums (math.fsum), never estimates.
Events over the full power set are expressed as predicates on outcome
indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SpaceMismatchError

_WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteProbabilitySpace:
    """Outcome labels plus nonnegative weights summing to one.

    Weights must already sum to 1 within 1e-12; they are renormalized
    exactly on construction so downstream sums see total mass 1.
    """

    labels: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        weights = tuple(float(w) for w in self.weights)
        if len(labels) == 0:
            raise ValueError("a probability space needs at least one outcome")
        if len(labels) != len(weights):
            raise ValueError("labels and weights must have equal length")
        if any(not math.isfinite(w) or w < 0 for w in weights):
            raise ValueError("weights must be finite and nonnegative")
        total = math.fsum(weights)
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(
                f"weights must sum to 1 within {_WEIGHT_SUM_TOL}, got {total!r}"
            )
        weights = tuple(w / total for w in weights)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return len(self.labels)

    @classmethod
    def uniform(cls, outcomes) -> "DiscreteProbabilitySpace":
        """Uniform space over an outcome count or an iterable of labels."""
        if isinstance(outcomes, int):
            labels = tuple(f"w{i}" for i in range(outcomes))
        else:
            labels = tuple(str(x) for x in outcomes)
        n = len(labels)
        if n == 0:
            raise ValueError("a probability space needs at least one outcome")
        return cls(labels=labels, weights=tuple(1.0 / n for _ in range(n)))

    def as_dict(self) -> dict:
        return {"outcomes": list(self.labels), "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteProbabilitySpace":
        return cls(labels=tuple(data["outcomes"]),
                   weights=tuple(float(w) for w in data["weights"]))


@dataclass(frozen=True)
class RandomVariable:
    """A real value per outcome of a finite space."""

    space: DiscreteProbabilitySpace
    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != self.space.size:
            raise ValueError("need exactly one value per outcome")
        if any(not math.isfinite(v) for v in values):
            raise ValueError("random variable values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, space: DiscreteProbabilitySpace, c: float) -> "RandomVariable":
        return cls(space=space, values=tuple(float(c) for _ in range(space.size)))

    def to_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def _check_space(self, other: "RandomVariable"):
        if self.space != other.space:
            raise SpaceMismatchError(
                "random variables live on different probability spaces"
            )

    def _zip_with(self, other, op) -> "RandomVariable":
        if isinstance(other, RandomVariable):
            self._check_space(other)
            values = tuple(op(a, b) for a, b in zip(self.values, other.values))
        else:
            c = float(other)
            values = tuple(op(a, c) for a in self.values)
        return RandomVariable(space=self.space, values=values)

    def __add__(self, other):
        return self._zip_with(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip_with(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._zip_with(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._zip_with(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return RandomVariable(space=self.space, values=tuple(-v for v in self.values))

    def __abs__(self):
        return RandomVariable(space=self.space,
                              values=tuple(abs(v) for v in self.values))

    def as_dict(self) -> dict:
        return {"space": self.space.as_dict(), "values": list(self.values)}

    @classmethod
    def from_dict(cls, data: dict,
                  space: DiscreteProbabilitySpace | None = None) -> "RandomVariable":
        if space is None:
            space = DiscreteProbabilitySpace.from_dict(data["space"])
        return cls(space=space, values=tuple(float(v) for v in data["values"]))


def prob_event(space: DiscreteProbabilitySpace,
               predicate: Callable[[int], bool]) -> float:
    """Exact probability of the event {i : predicate(i)}."""
    return math.fsum(w for i, w in enumerate(space.weights) if predicate(i))


def deviation_probability(x: RandomVariable, y: RandomVariable,
                          eps: float) -> float:
    """P(|x - y| >= eps), exact.  The inequality is inclusive."""
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"eps must be positive, got {eps}")
    x._check_space(y)
    return math.fsum(
        w for w, a, b in zip(x.space.weights, x.values, y.values)
        if abs(a - b) >= eps
    )


def expectation(x: RandomVariable) -> float:
    """Exact weighted mean."""
    return math.fsum(w * v for w, v in zip(x.space.weights, x.values))


def moment(x: RandomVariable, p: float) -> float:
    """The p-th absolute moment, p >= 1.

    Always finite on a finite space; exposed because dominated-convergence
    style hypotheses are stated through first moments.
    """
    if not (math.isfinite(p) and p >= 1):
        raise ValueError(f"moment order must be >= 1, got {p}")
    return math.fsum(w * abs(v) ** p for w, v in zip(x.space.weights, x.values))


def almost_surely_equal(x: RandomVariable, y: RandomVariable,
                        tol: float = 1e-9) -> bool:
    """True iff x and y agree within ``tol`` on every positive-weight outcome.

    Zero-weight outcomes are null sets and are ignored.
    """
    x._check_space(y)
    return all(
        abs(a - b) <= tol
        for w, a, b in zip(x.space.weights, x.values, y.values)
        if w > 0
    )
