"""Tightness searches over rule instances.

tightness_ratio measures how much of a bound is actually used
(left side over right side, 1 meaning the inequality is attained).
best_exponent minimizes a Holder-parameterized right-hand side over p,
and worst_case_alpha maximizes the tightness ratio over the power
family's parameter.  Both searches run golden-section inside a bracket
found on a coarse seed grid and fall back to a dense-grid argmin when
the seed profile is not unimodal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bounds import (DEFAULT_MARGIN_TOL, _LHS_FUNCS, bound_ratio, rhs_bound,
                     theorem_spec, validate_exponent)
from .corpus import SmoothFunction, make_power_family
from .errors import ParameterError
from .numerics import (DEFAULT_QUAD_BUDGET, DEFAULT_QUAD_TOL, Interval,
                       QuadratureResult)

EXPONENT_SEARCH_TAGS = ("T1_3", "T1_6", "ME2", "ME5")
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_DEGENERATE_OBJECTIVE = 1e-14


@dataclass(frozen=True)
class SearchResult:
    objective: float
    parameters: tuple[float, ...]
    iterations: int
    converged: bool
    note: str = ""


def tightness_ratio(tag: str, f: SmoothFunction, interval: Interval,
                    exponent: Optional[float] = None,
                    quad_tol: float = DEFAULT_QUAD_TOL,
                    quad_budget: int = DEFAULT_QUAD_BUDGET,
                    integral: QuadratureResult | None = None) -> float:
    """lhs/rhs for one rule instance; 0 when both sides vanish, infinity
    when only the right side does (a refutation signal, not an error)."""
    spec = theorem_spec(tag)
    exponent = validate_exponent(tag, exponent)
    lhs = _LHS_FUNCS[spec.lhs_kind](f, interval, quad_tol, quad_budget, integral)
    rhs = rhs_bound(tag, f, interval, exponent)
    return bound_ratio(lhs, rhs, DEFAULT_MARGIN_TOL)


def _golden_section(fn: Callable[[float], float], lo: float, hi: float,
                    tol: float) -> tuple[float, int]:
    """Minimize fn on [lo, hi]; returns (argmin, iterations)."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    iters = 0
    while hi - lo > tol and iters < 200:
        iters += 1
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fn(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fn(x2)
    return 0.5 * (lo + hi), iters


def _count_local_minima(values: np.ndarray) -> int:
    signs = np.sign(np.diff(values))
    signs = signs[signs != 0.0]
    if signs.size == 0:
        return 1
    switches = int(np.sum((signs[:-1] < 0) & (signs[1:] > 0)))
    # A profile that starts ascending has its minimum at the left edge.
    return (switches + (1 if signs[0] > 0 else 0)) or 1


def _minimize(fn: Callable[[float], float], seed_grid: np.ndarray,
              param_tol: float, fallback_points: int) -> SearchResult:
    """Seed-grid scan, degeneracy shortcut, golden section in the bracket
    around the seed argmin, dense-grid fallback if the seed profile shows
    more than one local minimum."""
    values = np.array([fn(p) for p in seed_grid])
    lo, hi = float(seed_grid[0]), float(seed_grid[-1])

    if float(np.max(np.abs(values))) <= _DEGENERATE_OBJECTIVE:
        mid = 0.5 * (lo + hi)
        return SearchResult(objective=fn(mid), parameters=(mid,),
                            iterations=len(seed_grid), converged=True,
                            note="degenerate objective (identically zero)")

    if _count_local_minima(values) > 1:
        dense = np.linspace(lo, hi, fallback_points)
        k = int(np.argmin(np.array([fn(p) for p in dense])))
        best = float(dense[k])
        return SearchResult(objective=fn(best), parameters=(best,),
                            iterations=len(seed_grid) + fallback_points,
                            converged=True,
                            note="dense-grid fallback (seed profile not unimodal)")

    k = int(np.argmin(values))
    blo = float(seed_grid[max(0, k - 1)])
    bhi = float(seed_grid[min(len(seed_grid) - 1, k + 1)])
    best, iters = _golden_section(fn, blo, bhi, param_tol)
    # An edge minimum leaves golden section within param_tol of the range
    # boundary; the boundary itself is a valid and possibly better point.
    candidates = [best, lo, hi]
    candidate_values = [fn(c) for c in candidates]
    best = candidates[int(np.argmin(candidate_values))]
    return SearchResult(objective=fn(best), parameters=(best,),
                        iterations=len(seed_grid) + iters + 2, converged=True)


def best_exponent(tag: str, f: SmoothFunction, interval: Interval,
                  p_range: tuple[float, float],
                  param_tol: float = 1e-6, seed_points: int = 33,
                  fallback_points: int = 200) -> SearchResult:
    """Minimize the Holder-parameterized right-hand side of the tag over p.

    The seed grid is log-spaced (the objective varies on a log scale near
    p = 1).  Right-hand sides are closed form, so no quadrature runs.
    """
    if tag not in EXPONENT_SEARCH_TAGS:
        raise ParameterError(
            f"exponent search applies to {', '.join(EXPONENT_SEARCH_TAGS)}, got {tag!r}")
    lo, hi = float(p_range[0]), float(p_range[1])
    if not (1.0 < lo < hi):
        raise ParameterError(f"p range must satisfy 1 < lo < hi, got ({lo}, {hi})")
    seed = np.exp(np.linspace(math.log(lo), math.log(hi), seed_points))
    return _minimize(lambda p: rhs_bound(tag, f, interval, p),
                     seed, param_tol, fallback_points)


def worst_case_alpha(tag: str, interval: Interval,
                     alpha_range: tuple[float, float],
                     exponent: Optional[float] = None,
                     quad_tol: float = DEFAULT_QUAD_TOL,
                     quad_budget: int = DEFAULT_QUAD_BUDGET,
                     param_tol: float = 1e-6, seed_points: int = 33,
                     fallback_points: int = 200) -> SearchResult:
    """Maximize the tightness ratio of the tag over the power family's
    parameter on a strictly positive interval."""
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not (0.0 < lo < hi <= 1.0):
        raise ParameterError(f"alpha range must satisfy 0 < lo < hi <= 1, got ({lo}, {hi})")
    if not interval.a > 0.0:
        raise ParameterError(
            f"alpha search needs a strictly positive interval, got [{interval.a}, {interval.b}]")
    validate_exponent(tag, exponent)

    def ratio(alpha: float) -> float:
        f = make_power_family(alpha, domain=interval)
        return tightness_ratio(tag, f, interval, exponent, quad_tol, quad_budget)

    seed = np.linspace(lo, hi, seed_points)
    result = _minimize(lambda a: -ratio(a), seed, param_tol, fallback_points)
    best = result.parameters[0]
    return SearchResult(objective=ratio(best), parameters=(best,),
                        iterations=result.iterations, converged=result.converged,
                        note=result.note)
