"""Gauges: open-interval-valued fineness constraints on a compact interval.

A gauge assigns to every point t an open interval gamma(t) = (t - alpha(t),
t + beta(t)) with alpha(t), beta(t) > 0, so that t is always interior.  A
partition is accepted (is "sharp") where each piece fits inside the gauge
interval of its own tag; see ``partitions.is_sharp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidGaugeError

ScalarWidth = Callable[[float], tuple[float, float]]
VectorWidth = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper] with lower < upper."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValueError("interval endpoints must be finite")
        if not self.lower < self.upper:
            raise ValueError(
                f"interval requires lower < upper, got [{self.lower}, {self.upper}]"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, t: float) -> bool:
        return self.lower <= t <= self.upper

    @staticmethod
    def coerce(value) -> "Interval":
        if isinstance(value, Interval):
            return value
        lo, hi = value
        return Interval(float(lo), float(hi))


@dataclass(frozen=True)
class Gauge:
    """Width pair (alpha(t), beta(t)) defining gamma(t) = (t-alpha, t+beta).

    ``width`` is the scalar evaluator; ``vector_width`` optionally evaluates
    a whole ndarray of points at once (same semantics, used on hot paths).
    Evaluators must be pure: the same t always yields the same pair.
    """

    width: ScalarWidth
    vector_width: VectorWidth | None = None

    def half_widths(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate (alpha, beta) over an array of points, validating both."""
        ts = np.asarray(ts, dtype=float)
        if self.vector_width is not None:
            alpha, beta = self.vector_width(ts)
            alpha = np.asarray(alpha, dtype=float)
            beta = np.asarray(beta, dtype=float)
        else:
            pairs = [self.width(float(t)) for t in ts.ravel()]
            alpha = np.array([p[0] for p in pairs]).reshape(ts.shape)
            beta = np.array([p[1] for p in pairs]).reshape(ts.shape)
        bad = ~(np.isfinite(alpha) & np.isfinite(beta) & (alpha > 0) & (beta > 0))
        if bad.any():
            t_bad = float(np.asarray(ts)[bad].ravel()[0])
            raise InvalidGaugeError(
                f"gauge width must be positive and finite; offending t={t_bad!r}"
            )
        return alpha, beta

    def at(self, t: float) -> tuple[float, float]:
        """The open interval gamma(t) as an endpoint pair."""
        alpha, beta = self.half_widths(np.array([t]))
        return t - float(alpha[0]), t + float(beta[0])


def gauge_from_delta(delta: Callable[[float], float],
                     vector_delta: VectorWidth | None = None) -> Gauge:
    """Symmetric gauge gamma(t) = (t - delta(t)/2, t + delta(t)/2).

    ``delta`` must be strictly positive wherever it is evaluated; violations
    surface as :class:`InvalidGaugeError` at evaluation time.
    """

    def width(t: float) -> tuple[float, float]:
        h = delta(t) / 2.0
        return h, h

    vector = None
    if vector_delta is not None:
        def vector(ts):
            h = np.asarray(vector_delta(ts), dtype=float) / 2.0
            return h, h

    return Gauge(width=width, vector_width=vector)


def constant_gauge(width: float) -> Gauge:
    """Symmetric gauge of constant full width ``width``."""
    if not (np.isfinite(width) and width > 0):
        raise InvalidGaugeError(f"constant gauge width must be positive, got {width}")
    half = width / 2.0

    def vector(ts):
        h = np.full(np.shape(ts), half)
        return h, h

    return Gauge(width=lambda t: (half, half), vector_width=vector)


def delta_from_gauge(gauge: Gauge) -> Callable[[float], float]:
    """Width function delta(t) = min(alpha(t), beta(t)).

    The min makes the fineness implication hold pointwise: any piece of width
    below delta at its own tag sits inside gamma(tag), regardless of where
    the tag falls within the piece.
    """

    def delta(t: float) -> float:
        alpha, beta = gauge.half_widths(np.array([t]))
        return float(min(alpha[0], beta[0]))

    return delta


def gauge_intersection(g1: Gauge, g2: Gauge) -> Gauge:
    """Pointwise intersection: componentwise min of the half widths.

    The result is finer than both inputs, so any division sharp for it is
    sharp for each input.
    """

    def width(t: float) -> tuple[float, float]:
        a1, b1 = g1.width(t)
        a2, b2 = g2.width(t)
        return min(a1, a2), min(b1, b2)

    vector = None
    if g1.vector_width is not None and g2.vector_width is not None:
        def vector(ts):
            a1, b1 = g1.vector_width(ts)
            a2, b2 = g2.vector_width(ts)
            return np.minimum(a1, a2), np.minimum(b1, b2)

    return Gauge(width=width, vector_width=vector)


@dataclass(frozen=True)
class GaugeFamily:
    """A named sequence of gauges indexed by refinement level.

    Families drive iterative integration: widths must shrink to zero
    pointwise as the level grows.
    """

    name: str
    at_level: Callable[[int], Gauge]

    def __call__(self, level: int) -> Gauge:
        return self.at_level(level)


def uniform_gauge_family(domain: Interval) -> GaugeFamily:
    """Constant-width family delta_m = (b - a) * 2^-m (uniform halving)."""
    domain = Interval.coerce(domain)
    span = domain.width

    def at_level(level: int) -> Gauge:
        return constant_gauge(span * 2.0 ** -level)

    return GaugeFamily(name="uniform", at_level=at_level)


def scaled_uniform_family(domain: Interval, factor: float, name: str) -> GaugeFamily:
    """Constant-width family delta_m = factor * (b - a) * 2^-m."""
    domain = Interval.coerce(domain)
    span = domain.width * factor

    def at_level(level: int) -> Gauge:
        return constant_gauge(span * 2.0 ** -level)

    return GaugeFamily(name=name, at_level=at_level)


def intersect_families(families, name: str | None = None) -> GaugeFamily:
    """Levelwise intersection of several gauge families."""
    families = tuple(families)
    if not families:
        raise ValueError("need at least one family to intersect")
    if len(families) == 1:
        return families[0]
    label = name or "&".join(f.name for f in families)

    def at_level(level: int) -> Gauge:
        gauge = families[0](level)
        for fam in families[1:]:
            gauge = gauge_intersection(gauge, fam(level))
        return gauge

    return GaugeFamily(name=label, at_level=at_level)
