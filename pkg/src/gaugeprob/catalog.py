"""Builtin catalog: named integrands, gauge families, and random functions.

Catalog ids are stable public API (adding entries is non-breaking, renaming
is breaking).  Every entry that needs a non-uniform gauge ships with one:

* ``osc-derivative`` -- the derivative of t^2 sin(1/t^2) (extended by 0 at
  the origin), unbounded near 0 and beyond any constant-width refinement;
  its family pinches a tag-0 piece at the origin and tracks the local
  oscillation scale elsewhere.
* ``finite-indicator`` -- the indicator of a 100-point set; its family
  pinches the gauge at exactly those points, so sharp divisions can only
  tag them with negligible width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ScenarioError
from .gauges import (
    Gauge,
    GaugeFamily,
    Interval,
    scaled_uniform_family,
    uniform_gauge_family,
)
from .probability import DiscreteProbabilitySpace, RandomVariable
from .quadrature import ScalarIntegrand
from .random_functions import RandomFunction, SeparableRandomFunction

UNIT = Interval(0.0, 1.0)


# ---------------------------------------------------------------------------
# scalar integrands


def _poly5(t):
    return t ** 5 - 2.0 * t ** 3 + t - 0.5


def _trig_mix(t):
    return np.sin(3.0 * t) + np.cos(2.0 * t)


def _osc_antiderivative_scalar(t: float) -> float:
    if t == 0.0:
        return 0.0
    return t * t * math.sin(1.0 / (t * t))


def _osc_antiderivative_vector(ts: np.ndarray) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    safe = np.where(ts == 0.0, 1.0, ts)
    return np.where(ts == 0.0, 0.0, ts * ts * np.sin(1.0 / (safe * safe)))


def _osc_derivative_scalar(t: float) -> float:
    if t == 0.0:
        return 0.0
    inv2 = 1.0 / (t * t)
    return 2.0 * t * math.sin(inv2) - (2.0 / t) * math.cos(inv2)


def _osc_derivative_vector(ts: np.ndarray) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    safe = np.where(ts == 0.0, 1.0, ts)
    inv2 = 1.0 / (safe * safe)
    values = 2.0 * safe * np.sin(inv2) - (2.0 / safe) * np.cos(inv2)
    return np.where(ts == 0.0, 0.0, values)


# The exceptional set for the indicator entry: dyadic midpoints
# (2i+1) / 2^d at depths d = 2..13, with a fixed count per depth.  Uniform
# halving tags exactly the depth-(m+2) midpoints at level m, so constant
# gauges keep colliding with the set at every level of an 11-level budget,
# while the pinch family below never lets a set point become a tag at all.
INDICATOR_DEPTH_COUNTS: dict[int, int] = {
    2: 1, 3: 3, 4: 5, 5: 9, 6: 10, 7: 10, 8: 10,
    9: 10, 10: 10, 11: 10, 12: 10, 13: 12,
}


@lru_cache(maxsize=1)
def indicator_points() -> tuple[float, ...]:
    """The 100 exceptional points of the ``finite-indicator`` entry."""
    points = []
    for depth, count in INDICATOR_DEPTH_COUNTS.items():
        scale = 2.0 ** depth
        points.extend((2 * i + 1) / scale for i in range(count))
    return tuple(sorted(points))


@lru_cache(maxsize=1)
def _indicator_array() -> np.ndarray:
    arr = np.array(indicator_points())
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=1)
def _indicator_set() -> frozenset:
    return frozenset(indicator_points())


def _indicator_scalar(t: float) -> float:
    return 1.0 if t in _indicator_set() else 0.0


def _indicator_vector(ts: np.ndarray) -> np.ndarray:
    return np.isin(np.asarray(ts, dtype=float), _indicator_array()).astype(float)


# ---------------------------------------------------------------------------
# gauge families


def osc_singular_family(c0: float = 1e-3, name: str = "osc-singular") -> GaugeFamily:
    """Gauge schedule for ``osc-derivative`` on [0, 1].

    Three zones, intersected:  near the origin the width follows 0.4 t^3,
    a fixed fraction of the local oscillation period pi t^3 of sin(1/t^2);
    above that a t^2 law c_m t^2 whose quadrature error telescopes against
    the antiderivative of cos(1/s^2)/s^3 and totals O(c_m^2); and a flat
    cap c_m / 2 for the tame outer region.  At the origin itself the width
    is a constant 2.5e-3, which makes bisection accept one piece
    [0, 2^-10] tagged at zero, contributing |F(2^-10)| < 1e-6 instead of a
    divergent tail.  The level schedule shrinks c_m by 2^(-m/2).

    Calibrated so a two-level run lands within a few 1e-7 of the true
    value at roughly 2e6 pieces per level.
    """
    w0 = 2.5e-3
    steep = 0.4

    def at_level(level: int) -> Gauge:
        c = c0 * 2.0 ** (-level / 2.0)
        cap = c / 2.0

        def width(t: float) -> tuple[float, float]:
            if t == 0.0:
                return w0 / 2.0, w0 / 2.0
            d = min(steep * t ** 3, c * t * t, cap)
            return d / 2.0, d / 2.0

        def vector(ts: np.ndarray):
            d = np.minimum(np.minimum(steep * ts ** 3, c * ts * ts), cap)
            d = np.where(ts == 0.0, w0, d)
            half = d / 2.0
            return half, half

        return Gauge(width=width, vector_width=vector)

    return GaugeFamily(name=name, at_level=at_level)


def indicator_pinch_family(pinch: float = 1e-11, base: float = 0.25,
                           name: str = "indicator-pinch") -> GaugeFamily:
    """Pinches the gauge to ``pinch * 2^-m`` at the exceptional points.

    Bisection then never tags an exceptional point (a neighbour candidate
    always accepts first), so every Riemann sum of the indicator is exactly
    zero; a point could only sneak in as a tag with a piece thinner than
    the pinch width.
    """
    points = _indicator_array()
    point_set = _indicator_set()

    def at_level(level: int) -> Gauge:
        pw = pinch * 2.0 ** -level
        bw = base * 2.0 ** -level

        def width(t: float) -> tuple[float, float]:
            d = pw if t in point_set else bw
            return d / 2.0, d / 2.0

        def vector(ts: np.ndarray):
            d = np.where(np.isin(ts, points), pw, bw)
            half = d / 2.0
            return half, half

        return Gauge(width=width, vector_width=vector)

    return GaugeFamily(name=name, at_level=at_level)


_GAUGE_BUILDERS = {
    "uniform": lambda domain: uniform_gauge_family(domain),
    "uniform-2/3": lambda domain: scaled_uniform_family(domain, 2.0 / 3.0,
                                                        "uniform-2/3"),
    "osc-singular": lambda domain: osc_singular_family(),
    "osc-singular-fine": lambda domain: osc_singular_family(
        c0=5e-4, name="osc-singular-fine"),
    "indicator-pinch": lambda domain: indicator_pinch_family(),
    "indicator-pinch-alt": lambda domain: indicator_pinch_family(
        pinch=1e-12, base=0.2, name="indicator-pinch-alt"),
}


def gauge_family_ids() -> tuple[str, ...]:
    return tuple(sorted(_GAUGE_BUILDERS))


def gauge_family(identifier: str, domain: Interval) -> GaugeFamily:
    try:
        builder = _GAUGE_BUILDERS[identifier]
    except KeyError:
        raise ScenarioError(
            f"unknown gauge family {identifier!r}; "
            f"known: {', '.join(gauge_family_ids())}"
        ) from None
    return builder(Interval.coerce(domain))


# ---------------------------------------------------------------------------
# scalar catalog

@lru_cache(maxsize=None)
def _scalar_entries() -> dict[str, ScalarIntegrand]:
    return {
        "constant": ScalarIntegrand(
            name="constant", fn=lambda t: 1.0,
            vector_fn=lambda ts: np.ones_like(np.asarray(ts, dtype=float)),
            sup_abs=1.0),
        "linear": ScalarIntegrand(
            name="linear", fn=lambda t: t,
            vector_fn=lambda ts: np.asarray(ts, dtype=float),
            sup_abs=1.0),
        "monomial2": ScalarIntegrand(
            name="monomial2", fn=lambda t: t * t,
            vector_fn=lambda ts: np.asarray(ts, dtype=float) ** 2,
            sup_abs=1.0),
        "monomial3": ScalarIntegrand(
            name="monomial3", fn=lambda t: t ** 3,
            vector_fn=lambda ts: np.asarray(ts, dtype=float) ** 3,
            sup_abs=1.0),
        "poly-deg5": ScalarIntegrand(
            name="poly-deg5", fn=_poly5, vector_fn=_poly5,
            sup_abs=0.5),
        "trig-mix": ScalarIntegrand(
            name="trig-mix", fn=lambda t: math.sin(3.0 * t) + math.cos(2.0 * t),
            vector_fn=_trig_mix, sup_abs=2.0),
        "osc-derivative": ScalarIntegrand(
            name="osc-derivative", fn=_osc_derivative_scalar,
            vector_fn=_osc_derivative_vector,
            gauge_family=osc_singular_family(), sup_abs=None),
        "finite-indicator": ScalarIntegrand(
            name="finite-indicator", fn=_indicator_scalar,
            vector_fn=_indicator_vector,
            gauge_family=indicator_pinch_family(), sup_abs=1.0),
    }


def scalar_ids() -> tuple[str, ...]:
    return tuple(sorted(_scalar_entries()))


def scalar_integrand(identifier: str) -> ScalarIntegrand:
    try:
        return _scalar_entries()[identifier]
    except KeyError:
        raise ScenarioError(
            f"unknown integrand {identifier!r}; known: {', '.join(scalar_ids())}"
        ) from None


# ---------------------------------------------------------------------------
# random-function catalog


@dataclass(frozen=True)
class RandomEntry:
    """A catalog random function with its shipped integration strategies."""

    name: str
    description: str
    function: RandomFunction
    domain: Interval
    strategies: tuple[GaugeFamily, GaugeFamily]
    dominator: RandomVariable | None


@lru_cache(maxsize=1)
def two_point_space() -> DiscreteProbabilitySpace:
    return DiscreteProbabilitySpace.uniform(("w1", "w2"))


def _two_point_coefficient() -> RandomVariable:
    return RandomVariable(space=two_point_space(), values=(1.0, 2.0))


def _uniform_strategies(domain: Interval) -> tuple[GaugeFamily, GaugeFamily]:
    return (uniform_gauge_family(domain),
            scaled_uniform_family(domain, 2.0 / 3.0, "uniform-2/3"))


def _dominator_from_bases(coefficients, bases) -> RandomVariable:
    """A(omega) = max_k |C_k(omega)| * sum_k sup|phi_k|."""
    sups = [b.sup_abs for b in bases]
    if any(s is None for s in sups):
        raise ValueError("all bases need a finite sup bound for a dominator")
    total = math.fsum(sups)
    space = coefficients[0].space
    values = tuple(
        max(abs(c.values[i]) for c in coefficients) * total
        for i in range(space.size)
    )
    return RandomVariable(space=space, values=values)


def _separable(coefficient_values, basis_ids, extra_bases=()) -> SeparableRandomFunction:
    space = two_point_space()
    coefficients = tuple(
        RandomVariable(space=space, values=tuple(vals))
        for vals in coefficient_values
    )
    bases = tuple(scalar_integrand(b) for b in basis_ids) + tuple(extra_bases)
    return SeparableRandomFunction(coefficients=coefficients, bases=bases)


@lru_cache(maxsize=None)
def _random_entries() -> dict[str, RandomEntry]:
    entries = {}

    f = _separable([(0.0, 0.0)], ["constant"])
    entries["zero"] = RandomEntry(
        name="zero", description="identically zero",
        function=f, domain=UNIT, strategies=_uniform_strategies(UNIT),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    f = _separable([(1.0, 2.0)], ["linear"])
    entries["linear-coeff"] = RandomEntry(
        name="linear-coeff", description="C * t with C = (1, 2)",
        function=f, domain=UNIT, strategies=_uniform_strategies(UNIT),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    f = _separable([(1.0, 1.0), (0.0, 3.0)], ["constant", "linear"])
    entries["affine-pair"] = RandomEntry(
        name="affine-pair", description="C1 * 1 + C2 * t",
        function=f, domain=UNIT, strategies=_uniform_strategies(UNIT),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    f = _separable([(1.0, 2.0)], ["monomial2"])
    entries["quadratic-coeff"] = RandomEntry(
        name="quadratic-coeff", description="C * t^2",
        function=f, domain=UNIT, strategies=_uniform_strategies(UNIT),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    f = _separable([(1.0, 2.0)], ["trig-mix"])
    entries["trig-coeff"] = RandomEntry(
        name="trig-coeff", description="C * (sin 3t + cos 2t)",
        function=f, domain=UNIT, strategies=_uniform_strategies(UNIT),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    f = _separable([(1.0, 2.0)], ["osc-derivative"])
    entries["osc-coeff"] = RandomEntry(
        name="osc-coeff",
        description="C * d/dt[t^2 sin(1/t^2)]; needs the singular family",
        function=f, domain=UNIT,
        strategies=(osc_singular_family(),
                    osc_singular_family(c0=5e-4, name="osc-singular-fine")),
        dominator=None)

    f = _separable([(1.0, 2.0)], ["finite-indicator"])
    entries["indicator-coeff"] = RandomEntry(
        name="indicator-coeff",
        description="C * indicator of the 100-point exceptional set",
        function=f, domain=UNIT,
        strategies=(indicator_pinch_family(),
                    indicator_pinch_family(pinch=1e-12, base=0.2,
                                           name="indicator-pinch-alt")),
        dominator=_dominator_from_bases(f.coefficients, f.bases))

    return entries


def random_ids() -> tuple[str, ...]:
    return tuple(sorted(_random_entries()))


def dominated_ids() -> tuple[str, ...]:
    """Entries shipping a finite dominating variable (exchange-check ready)."""
    return tuple(
        name for name in random_ids()
        if _random_entries()[name].dominator is not None
    )


def random_entry(identifier: str) -> RandomEntry:
    try:
        return _random_entries()[identifier]
    except KeyError:
        raise ScenarioError(
            f"unknown random function {identifier!r}; "
            f"known: {', '.join(random_ids())}"
        ) from None


# ---------------------------------------------------------------------------
# antiderivative / derivative pairs


@dataclass(frozen=True)
class FtcEntry:
    """A random antiderivative with its pathwise derivative."""

    name: str
    antiderivative: RandomFunction
    derivative: RandomFunction
    domain: Interval
    t0: float


@lru_cache(maxsize=None)
def _ftc_entries() -> dict[str, FtcEntry]:
    double_linear = ScalarIntegrand(
        name="double-linear", fn=lambda t: 2.0 * t,
        vector_fn=lambda ts: 2.0 * np.asarray(ts, dtype=float), sup_abs=2.0)
    osc_anti = ScalarIntegrand(
        name="osc-antiderivative", fn=_osc_antiderivative_scalar,
        vector_fn=_osc_antiderivative_vector, sup_abs=1.0)
    entries = {
        "ftc-quadratic": FtcEntry(
            name="ftc-quadratic",
            antiderivative=_separable([(1.0, 2.0)], ["monomial2"]),
            derivative=_separable([(1.0, 2.0)], [], extra_bases=(double_linear,)),
            domain=UNIT, t0=0.5),
        "ftc-singular": FtcEntry(
            name="ftc-singular",
            antiderivative=_separable([(1.0, 2.0)], [], extra_bases=(osc_anti,)),
            derivative=_separable([(1.0, 2.0)], ["osc-derivative"]),
            domain=UNIT, t0=0.5),
    }
    return entries


def ftc_ids() -> tuple[str, ...]:
    return tuple(sorted(_ftc_entries()))


def ftc_entry(identifier: str) -> FtcEntry:
    try:
        return _ftc_entries()[identifier]
    except KeyError:
        raise ScenarioError(
            f"unknown antiderivative pair {identifier!r}; "
            f"known: {', '.join(ftc_ids())}"
        ) from None
