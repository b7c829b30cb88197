"""Gauge integration of random functions, in probability.

A random variable I is accepted as the integral of f when Riemann sums over
sharp divisions converge to I in probability: for tolerance pairs
(eps, eta), the probability that a sum deviates from I by eps or more must
fall below eta once divisions are sharp for a fine enough gauge.

Definitions quantify over *all* sharp divisions; an implementation can only
sample them.  Results therefore carry a certificate -- deviation tails
measured on the constructed division and on fresh, finer divisions sharp
for the same gauge -- plus a verified/unverified flag instead of a truth
claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError, NonConvergenceError, SpaceMismatchError
from .gauges import GaugeFamily, Interval, uniform_gauge_family
from .partitions import TaggedDivision, cousin_partition, repick_tags
from .probability import (
    RandomVariable,
    almost_surely_equal,
    deviation_probability,
    expectation,
    moment,
)
from .quadrature import (
    DEFAULT_MAX_LEVELS,
    QuadratureResult,
    kh_integrate,
    kh_levels,
    riemann_sum_scalar,
)
from .random_functions import (
    PathwiseRandomFunction,
    RandomFunction,
    SeparableRandomFunction,
    as_pathwise,
    expectation_function,
    resolve_gauge_family,
    values_matrix,
)

DEFAULT_EPS_GRID = (1e-2, 1e-3, 1e-4)
DEFAULT_ETA = 1e-2

# Verification draws per certificate beyond the constructed division: the
# same pieces re-tagged with reversed candidate preference, plus a fresh
# partition with an off-center split ratio.  All sharp for the same gauge.
_FRESH_SPLIT = 0.45

# Certification may refine this many levels past the integration level while
# hunting a gauge fine enough for a strict (eps, eta) pair, and never grows
# a division past the piece guard.
_VERIFY_EXTRA_LEVELS = 12
_VERIFY_PIECE_GUARD = 8_000_000


@dataclass(frozen=True)
class CertificateRow:
    eps: float
    eta: float
    achieved_tail: float
    mesh_bound: float

    def as_dict(self) -> dict:
        return {"eps": self.eps, "eta": self.eta,
                "achieved_tail": self.achieved_tail,
                "mesh_bound": self.mesh_bound}


@dataclass(frozen=True)
class StochasticIntegralResult:
    """Integral variable plus the (eps, eta) evidence behind it."""

    integral: RandomVariable
    certificate: tuple[CertificateRow, ...]
    method: str
    verified: bool
    levels_used: int
    failed_outcomes: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "verified": self.verified,
            "levels_used": self.levels_used,
            "failed_outcomes": list(self.failed_outcomes),
            "integral": list(self.integral.values),
            "certificate": [row.as_dict() for row in self.certificate],
        }


def random_riemann_sum(f: RandomFunction, division: TaggedDivision) -> RandomVariable:
    """Outcome-wise Riemann sum of f over the division.

    For a separable function this is exactly
    sum_k C_k * riemann_sum_scalar(phi_k, division); coefficients never mix
    with tag evaluation, so the identity is algebraic, not numerical.
    """
    if isinstance(f, SeparableRandomFunction):
        scalar_sums = [riemann_sum_scalar(b, division) for b in f.bases]
        values = tuple(
            math.fsum(c.values[i] * s for c, s in zip(f.coefficients, scalar_sums))
            for i in range(f.space.size)
        )
        return RandomVariable(space=f.space, values=values)
    matrix = values_matrix(f, division.tags)
    bad = ~np.isfinite(matrix)
    if bad.any():
        outcome, col = np.argwhere(bad)[0]
        raise EvaluationError(
            "random function returned a non-finite value",
            tag=float(division.tags[col]), outcome=int(outcome),
        )
    sums = matrix @ division.widths
    return RandomVariable(space=f.space, values=tuple(float(s) for s in sums))


def _pair_rows(eps: float | None, eta: float | None, tol: float):
    """The (eps, eta) pairs a certificate reports.

    The caller's pair always appears first; default grid pairs are added
    when they are meaningful at this tolerance (eps >= 10 tol) and no
    stricter than the caller's request.
    """
    rows = []
    if eps is not None:
        rows.append((eps, eta))
    floor = 10.0 * tol if eps is None else max(10.0 * tol, eps)
    for e in DEFAULT_EPS_GRID:
        if e >= floor and (e, DEFAULT_ETA) not in rows:
            rows.append((e, DEFAULT_ETA))
    if not rows:
        rows.append((max(10.0 * tol, 1e-12), DEFAULT_ETA))
    return rows


def _certify(f_for_sums: RandomFunction, integral: RandomVariable,
             family: GaugeFamily, domain: Interval, start_level: int,
             pairs, max_levels: int = DEFAULT_MAX_LEVELS,
             ) -> tuple[tuple[CertificateRow, ...], bool]:
    """Find, per (eps, eta) pair, a gauge level whose sharp divisions all
    stay within eps of the integral outside probability eta.

    Tails are measured on three divisions per level: the constructed one,
    the same pieces re-tagged with reversed preference, and an off-center
    split.  A pair that keeps failing refines to finer levels (each pair is
    entitled to its own gauge) until the level or piece budget runs out, at
    which point its row reports the failing tail honestly.
    """
    pending = list(pairs)
    rows: dict[tuple[float, float], CertificateRow] = {}
    stop_level = min(start_level + _VERIFY_EXTRA_LEVELS, max_levels)
    level = start_level
    while pending:
        gauge = family(level)
        base = cousin_partition(gauge, domain)
        divisions = (
            base,
            repick_tags(base, gauge),
            cousin_partition(gauge, domain, split=_FRESH_SPLIT),
        )
        all_sums = [random_riemann_sum(f_for_sums, d) for d in divisions]
        still = []
        for (eps, eta) in pending:
            tail = max(
                deviation_probability(sums, integral, eps) for sums in all_sums
            )
            rows[(eps, eta)] = CertificateRow(
                eps=eps, eta=eta, achieved_tail=tail, mesh_bound=base.mesh)
            if tail >= eta:
                still.append((eps, eta))
        pending = still
        if level >= stop_level or base.pieces > _VERIFY_PIECE_GUARD:
            break
        level += 1
    ordered = tuple(rows[pair] for pair in pairs)
    ok = all(row.achieved_tail < row.eta for row in ordered)
    return ordered, ok


def integrate_separable(f: SeparableRandomFunction, domain: Interval,
                        tol: float,
                        max_levels: int = DEFAULT_MAX_LEVELS,
                        ) -> StochasticIntegralResult:
    """Integrate sum_k C_k phi_k exactly through its scalar basis integrals.

    I(omega) = sum_k C_k(omega) * integral(phi_k); each basis integrates
    under its own paired gauge family (uniform halving when none is
    shipped).  A basis that fails to converge raises
    :class:`NonConvergenceError` naming the term.
    """
    domain = Interval.coerce(domain)
    if not isinstance(f, SeparableRandomFunction):
        raise TypeError("integrate_separable needs a separable random function")
    scalar_results: list[QuadratureResult] = []
    for k, basis in enumerate(f.bases):
        res = kh_integrate(basis, domain, tol, gauge_family=basis.gauge_family,
                           max_levels=max_levels)
        if not res.converged:
            raise NonConvergenceError(
                f"basis {k} ({basis.name!r}) did not converge within the level budget",
                index=k,
            )
        scalar_results.append(res)
    values = tuple(
        math.fsum(c.values[i] * r.value
                  for c, r in zip(f.coefficients, scalar_results))
        for i in range(f.space.size)
    )
    integral = RandomVariable(space=f.space, values=values)

    level = max(r.refinement_levels for r in scalar_results)
    family = resolve_gauge_family(f, domain)
    rows, ok = _certify(f, integral, family, domain, level,
                        _pair_rows(None, None, tol))
    return StochasticIntegralResult(
        integral=integral, certificate=rows, method="separable",
        verified=ok, levels_used=level,
    )


def integrate_pathwise(f: RandomFunction, domain: Interval, eps: float,
                       eta: float, tol: float,
                       gauge_family: GaugeFamily | None = None,
                       max_levels: int = DEFAULT_MAX_LEVELS,
                       method: str = "pathwise") -> StochasticIntegralResult:
    """Integrate every sample path under one shared gauge family.

    A single gauge must serve all outcomes simultaneously, so each level
    builds one sharp division and sums every path over it.  A path's value
    freezes at its first successive-level agreement within ``tol``
    (outcome-wise quadrature); paths that never settle are listed in
    ``failed_outcomes`` and the result is left unverified, in-band.

    The certificate re-measures deviation tails on fresh divisions at the
    final level and requires tail < eta for the requested pair and for the
    default grid.
    """
    for name, val in (("eps", eps), ("eta", eta), ("tol", tol)):
        if not (math.isfinite(val) and val > 0):
            raise ValueError(f"{name} must be positive, got {val}")
    domain = Interval.coerce(domain)
    view = as_pathwise(f)
    family = resolve_gauge_family(f, domain, gauge_family)
    space = view.space
    n = space.size

    frozen = np.full(n, np.nan)
    settled = np.zeros(n, dtype=bool)
    previous = None
    last_sums = None
    level = 0
    for level in range(max_levels + 1):
        gauge = family(level)
        division = cousin_partition(gauge, domain)
        matrix = values_matrix(view, division.tags)
        bad = ~np.isfinite(matrix)
        if bad.any():
            outcome, col = np.argwhere(bad)[0]
            raise EvaluationError(
                "random function returned a non-finite value",
                tag=float(division.tags[col]), outcome=int(outcome),
            )
        sums = matrix @ division.widths
        if previous is not None:
            newly = (~settled) & (np.abs(sums - previous) <= tol)
            frozen[newly] = sums[newly]
            settled |= newly
            if settled.all():
                last_sums = sums
                break
        previous = sums
        last_sums = sums
    frozen[~settled] = last_sums[~settled]
    failed = tuple(int(i) for i in np.nonzero(~settled)[0])
    integral = RandomVariable(space=space, values=tuple(float(v) for v in frozen))

    rows, tails_ok = _certify(view, integral, family, domain, level,
                              _pair_rows(eps, eta, tol), max_levels=max_levels)
    return StochasticIntegralResult(
        integral=integral, certificate=rows, method=method,
        verified=tails_ok and not failed, levels_used=level,
        failed_outcomes=failed,
    )


def integrate_riemann_in_probability(f: RandomFunction, domain: Interval,
                                     eps: float, eta: float, tol: float,
                                     max_levels: int = DEFAULT_MAX_LEVELS,
                                     ) -> StochasticIntegralResult:
    """Pathwise integration restricted to constant-width gauges.

    The constant-gauge family (uniform mesh halving) is the degenerate case
    of gauge fineness, so this witnesses plain Riemann integrability in
    probability: smooth integrands reproduce the gauge result, while
    integrands needing local pinching stall or miss under any level budget.
    """
    domain = Interval.coerce(domain)
    return integrate_pathwise(
        f, domain, eps, eta, tol,
        gauge_family=uniform_gauge_family(domain),
        max_levels=max_levels, method="riemann",
    )


def _descending_eps_grid(eps: float, floor: float, count: int = 5):
    if eps <= floor:
        return (eps,)
    ratio = (floor / eps) ** (1.0 / (count - 1))
    grid = [eps * ratio ** j for j in range(count)]
    grid[-1] = floor
    return tuple(grid)


@dataclass(frozen=True)
class UniquenessReport:
    """Do two gauge strategies land on the same integral (a.e.)?"""

    strategy_names: tuple[str, str]
    verified: tuple[bool, bool]
    conclusive: bool
    almost_surely_equal: bool
    equal_tolerance: float
    deviation_rows: tuple[tuple[float, float], ...]
    integrals: tuple[RandomVariable, RandomVariable]

    def as_dict(self) -> dict:
        return {
            "strategies": list(self.strategy_names),
            "verified": list(self.verified),
            "conclusive": self.conclusive,
            "almost_surely_equal": self.almost_surely_equal,
            "equal_tolerance": self.equal_tolerance,
            "deviation_rows": [
                {"eps": e, "deviation_probability": p}
                for e, p in self.deviation_rows
            ],
            "integral_1": list(self.integrals[0].values),
            "integral_2": list(self.integrals[1].values),
        }


def verify_uniqueness(f: RandomFunction, domain: Interval, strategies,
                      eps: float, eta: float, tol: float,
                      max_levels: int = DEFAULT_MAX_LEVELS) -> UniquenessReport:
    """Integrate f under two gauge strategies and compare the results.

    Any two accepted integrals must agree almost everywhere, so the report
    states almost-sure equality at 10 tol plus exact deviation
    probabilities on an eps grid descending to 10 tol -- the finite-space
    image of shrinking the deviation threshold to zero.  If either strategy
    fails verification the report is inconclusive rather than an error.
    """
    fam1, fam2 = strategies
    r1 = integrate_pathwise(f, domain, eps, eta, tol, gauge_family=fam1,
                            max_levels=max_levels)
    r2 = integrate_pathwise(f, domain, eps, eta, tol, gauge_family=fam2,
                            max_levels=max_levels)
    equal_tol = 10.0 * tol
    rows = tuple(
        (e, deviation_probability(r1.integral, r2.integral, e))
        for e in _descending_eps_grid(eps, equal_tol)
    )
    return UniquenessReport(
        strategy_names=(getattr(fam1, "name", "strategy-1"),
                        getattr(fam2, "name", "strategy-2")),
        verified=(r1.verified, r2.verified),
        conclusive=r1.verified and r2.verified,
        almost_surely_equal=almost_surely_equal(r1.integral, r2.integral,
                                                tol=equal_tol),
        equal_tolerance=equal_tol,
        deviation_rows=rows,
        integrals=(r1.integral, r2.integral),
    )


def _chebyshev_grid(domain: Interval, count: int = 257) -> np.ndarray:
    center = 0.5 * (domain.lower + domain.upper)
    half = 0.5 * domain.width
    nodes = center + half * np.cos(np.pi * np.arange(count) / (count - 1))
    return np.sort(nodes)


@dataclass(frozen=True)
class FubiniReport:
    """Exchange check: integrate-the-mean versus mean-of-the-integrals."""

    hypothesis_ok: bool
    violation_t: float | None
    violating_outcomes: tuple[int, ...]
    lhs: float | None
    rhs: float | None
    abs_difference: float | None
    tolerance: float
    passed: bool
    bound_ok: bool | None
    bound_margin: float | None
    dominator_moment: float
    grid_points: int
    lhs_converged: bool | None
    rhs_verified: bool | None

    def as_dict(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "violation_t": self.violation_t,
            "violating_outcomes": list(self.violating_outcomes),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_difference": self.abs_difference,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "bound_ok": self.bound_ok,
            "bound_margin": self.bound_margin,
            "dominator_moment": self.dominator_moment,
            "grid_points": self.grid_points,
            "lhs_converged": self.lhs_converged,
            "rhs_verified": self.rhs_verified,
        }


def _domination_violation(view: PathwiseRandomFunction, ts: np.ndarray,
                          dominator: RandomVariable):
    """First grid point where |f(t, .)| exceeds the dominator, if any."""
    weights = np.array(view.space.weights)
    a_vals = dominator.to_array()
    matrix = np.abs(values_matrix(view, ts))
    exceeded = (matrix > a_vals[:, None]) & (weights[:, None] > 0)
    cols = np.nonzero(exceeded.any(axis=0))[0]
    if cols.size == 0:
        return None
    col = int(cols[0])
    outcomes = tuple(int(i) for i in np.nonzero(exceeded[:, col])[0])
    return float(ts[col]), outcomes


def fubini_check(f: RandomFunction, domain: Interval,
                 dominator: RandomVariable, tol: float,
                 grid_points: int = 257,
                 max_levels: int = DEFAULT_MAX_LEVELS) -> FubiniReport:
    """Check that integrating in t and averaging over outcomes commute.

    Hypotheses first: the dominator must be nonnegative (a.e.) with
    |f(t, omega)| <= A(omega) almost surely for every t -- verified exactly
    on a Chebyshev grid plus every tag the integrations actually touch.  A
    violation produces a failed report naming t and the outcomes; nothing
    is integrated in that case.

    With hypotheses in force, LHS integrates t -> E[f(t, .)] as a scalar
    function and RHS averages the pathwise integral; they must agree within
    20 tol.  The report also confirms the dominating bound
    |S(omega)| <= A(omega) (b - a) on the final division.
    """
    domain = Interval.coerce(domain)
    if not (math.isfinite(tol) and tol > 0):
        raise ValueError(f"tol must be positive, got {tol}")
    view = as_pathwise(f)
    if dominator.space != view.space:
        raise SpaceMismatchError("dominator must live on the function's space")
    if any(v < 0 for w, v in zip(dominator.space.weights, dominator.values)
           if w > 0):
        raise ValueError("dominator must be nonnegative almost everywhere")
    a_moment = moment(dominator, 1)

    grid = _chebyshev_grid(domain, grid_points)
    violation = _domination_violation(view, grid, dominator)

    mean_fn = expectation_function(f)
    lhs = rhs = diff = None
    bound_ok = bound_margin = None
    lhs_converged = rhs_verified = None
    checked_points = grid.size

    if violation is None:
        # LHS: drive the scalar quadrature manually to keep the final
        # division, whose tags join the hypothesis grid.
        previous = None
        lhs_converged = False
        final_division = None
        for level, division, value in kh_levels(mean_fn, domain,
                                                max_levels=max_levels):
            final_division = division
            if previous is not None and abs(value - previous) <= tol:
                lhs = value
                lhs_converged = True
                break
            previous = value
            lhs = value
        violation = _domination_violation(view, final_division.tags, dominator)
        checked_points += final_division.tags.size

    if violation is None:
        res = integrate_pathwise(f, domain, eps=1e-3, eta=DEFAULT_ETA, tol=tol,
                                 max_levels=max_levels)
        rhs = expectation(res.integral)
        rhs_verified = res.verified
        family = resolve_gauge_family(f, domain)
        division = cousin_partition(family(res.levels_used), domain)
        violation = _domination_violation(view, division.tags, dominator)
        checked_points += division.tags.size
        if violation is None:
            sums = random_riemann_sum(view, division)
            cap = dominator.to_array() * domain.width
            margins = np.abs(sums.to_array()) - cap
            positive = np.array(view.space.weights) > 0
            bound_margin = float(np.max(margins[positive]))
            bound_ok = bool(bound_margin <= 0.0)

    hypothesis_ok = violation is None
    if hypothesis_ok:
        diff = abs(lhs - rhs)
    passed = (hypothesis_ok and lhs_converged and diff is not None
              and diff <= 20.0 * tol)
    return FubiniReport(
        hypothesis_ok=hypothesis_ok,
        violation_t=None if hypothesis_ok else violation[0],
        violating_outcomes=() if hypothesis_ok else violation[1],
        lhs=lhs if hypothesis_ok else None,
        rhs=rhs if hypothesis_ok else None,
        abs_difference=diff,
        tolerance=20.0 * tol,
        passed=bool(passed),
        bound_ok=bound_ok,
        bound_margin=bound_margin,
        dominator_moment=a_moment,
        grid_points=checked_points,
        lhs_converged=lhs_converged,
        rhs_verified=rhs_verified,
    )


@dataclass(frozen=True)
class DerivativeReport:
    """Difference-quotient tails of F around t0 against a candidate slope."""

    t0: float
    eps: float
    eta: float
    rows: tuple[tuple[float, float], ...]
    passed: bool
    worst_tail: float
    worst_t: float

    def as_dict(self) -> dict:
        return {
            "t0": self.t0,
            "eps": self.eps,
            "eta": self.eta,
            "rows": [{"t": t, "tail": tail} for t, tail in self.rows],
            "passed": self.passed,
            "worst_tail": self.worst_tail,
            "worst_t": self.worst_t,
        }


def derivative_in_probability_at(F: RandomFunction, f_candidate: RandomFunction,
                                 t0: float, eps: float, eta: float,
                                 grid=None, radius: float = 1e-3,
                                 points: int = 16) -> DerivativeReport:
    """Is f_candidate(t0, .) the derivative of F at t0, in probability?

    For each grid point t near t0 the tail
    P(|(F(t) - F(t0)) / (t - t0) - f_candidate(t0)| >= eps) is computed
    exactly; all tails below eta passes.  The grid (default: ``points``
    symmetric offsets within ``radius``) is a finite surrogate for the
    every-t quantifier, so a pass is evidence, not proof.
    """
    for name, val in (("eps", eps), ("eta", eta)):
        if not (math.isfinite(val) and val > 0):
            raise ValueError(f"{name} must be positive, got {val}")
    viewF = as_pathwise(F)
    viewf = as_pathwise(f_candidate)
    if viewF.space != viewf.space:
        raise SpaceMismatchError("F and its candidate derivative must share a space")
    if grid is None:
        half = points // 2
        offsets = [radius * k / half for k in range(1, half + 1)]
        grid = [t0 - o for o in reversed(offsets)] + [t0 + o for o in offsets]
    grid = [float(t) for t in grid]
    if any(t == t0 for t in grid):
        raise ValueError("grid points must differ from t0")

    space = viewF.space
    ts = np.array(grid + [t0])
    f_matrix = values_matrix(viewF, ts)
    base = f_matrix[:, -1]
    slope = values_matrix(viewf, np.array([t0]))[:, 0]
    slope_rv = RandomVariable(space=space, values=tuple(float(v) for v in slope))

    rows = []
    for j, t in enumerate(grid):
        quotient = (f_matrix[:, j] - base) / (t - t0)
        q_rv = RandomVariable(space=space, values=tuple(float(v) for v in quotient))
        rows.append((t, deviation_probability(q_rv, slope_rv, eps)))
    worst_t, worst_tail = max(rows, key=lambda row: row[1])
    return DerivativeReport(
        t0=t0, eps=eps, eta=eta, rows=tuple(rows),
        passed=all(tail < eta for _, tail in rows),
        worst_tail=worst_tail, worst_t=worst_t,
    )


@dataclass(frozen=True)
class FtcReport:
    """EXPLORATORY: does the integral of the derivative recover F(b) - F(a)?

    The relationship is an open matter in this generality; the report
    asserts nothing beyond the computed numbers.
    """

    exploratory: bool
    derivative_points: tuple[tuple[float, bool, float], ...]
    derivative_all_passed: bool
    integral_verified: bool
    almost_surely_equal: bool
    equal_tolerance: float
    deviation_rows: tuple[tuple[float, float], ...]
    integral_values: tuple[float, ...]
    increment_values: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "exploratory": self.exploratory,
            "note": "exploratory experiment: no claim is asserted",
            "derivative_points": [
                {"t0": t, "passed": ok, "worst_tail": tail}
                for t, ok, tail in self.derivative_points
            ],
            "derivative_all_passed": self.derivative_all_passed,
            "integral_verified": self.integral_verified,
            "almost_surely_equal": self.almost_surely_equal,
            "equal_tolerance": self.equal_tolerance,
            "deviation_rows": [
                {"eps": e, "deviation_probability": p}
                for e, p in self.deviation_rows
            ],
            "integral_values": list(self.integral_values),
            "increment_values": list(self.increment_values),
        }


def ftc_experiment(F: RandomFunction, f: RandomFunction, domain: Interval,
                   eps: float, eta: float, tol: float,
                   derivative_points: int = 10,
                   derivative_eps: float = 1e-2,
                   max_levels: int = DEFAULT_MAX_LEVELS) -> FtcReport:
    """Compare the pathwise integral of f with the increment F(b) - F(a).

    First records difference-quotient checks at interior points, at their
    own threshold ``derivative_eps`` (they may fail for violently
    oscillating F; the experiment still runs).  Then integrates f under its
    paired gauge family and reports exact deviation tails between the
    integral and the increment, plus almost-sure equality at 10 tol.
    Output is labeled exploratory throughout.
    """
    domain = Interval.coerce(domain)
    width = domain.width
    radius = width * 1e-3
    checks = []
    for j in range(derivative_points):
        t0 = domain.lower + width * (j + 0.5) / derivative_points
        rep = derivative_in_probability_at(F, f, t0, derivative_eps, eta,
                                           radius=radius)
        checks.append((t0, rep.passed, rep.worst_tail))

    res = integrate_pathwise(f, domain, eps, eta, tol, max_levels=max_levels)
    viewF = as_pathwise(F)
    ends = values_matrix(viewF, np.array([domain.lower, domain.upper]))
    increment = RandomVariable(
        space=viewF.space,
        values=tuple(float(v) for v in ends[:, 1] - ends[:, 0]),
    )
    equal_tol = 10.0 * tol
    rows = tuple(
        (e, deviation_probability(res.integral, increment, e))
        for e in _descending_eps_grid(eps, equal_tol)
    )
    return FtcReport(
        exploratory=True,
        derivative_points=tuple(checks),
        derivative_all_passed=all(ok for _, ok, _ in checks),
        integral_verified=res.verified,
        almost_surely_equal=almost_surely_equal(res.integral, increment,
                                                tol=equal_tol),
        equal_tolerance=equal_tol,
        deviation_rows=rows,
        integral_values=res.integral.values,
        increment_values=increment.values,
    )
