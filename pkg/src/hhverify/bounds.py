"""Evaluators for the twelve inequality rules.

Each rule bounds a quadrature-rule deviation by an expression in the
endpoint magnitudes of one derivative order, under the hypothesis that a
power of that derivative's absolute value is quasi-convex on the interval.
The registry below fixes, per tag: the deviation on the left, the
derivative order consumed, the constant, and the exponent parameter the
rule takes (none, a Holder exponent p > 1, or a power-mean exponent
q >= 1).

Tag overview (w = b - a, Mk = max of |k-th derivative| at the endpoints):

  T1_2  trapezoid            <= (w/4) * M1
  T1_3  trapezoid            <= (w / (2*(p+1)^(1/p))) * M1
  T1_4  trapezoid            <= (w^2/12) * M2
  T1_5  corrected trapezoid  <= (w^3/192) * M3
  T1_6  corrected trapezoid  <= (w^3/96) * (1/(p+1))^(1/p) * M3
  T1_7  corrected trapezoid  <= (w^3/192) * M3
  ME1   corrected trapezoid  <= (w^4/720) * M4
  ME2   corrected trapezoid  <= (w^4/24) * beta(2p+1, 2p+1)^(1/p) * M4
  ME3   corrected trapezoid  <= (w^4/720) * M4
  ME4   corrected midpoint   <= (w^3/192) * M3
  ME5   corrected midpoint   <= (w^3/96) * (1/(p+1))^(1/p) * M3
  ME6   corrected midpoint   <= (w^3/192) * M3

The q-parameterized right-hand sides are written
(max{A^q, B^q})^(1/q) in the source inequalities; for A, B >= 0 that
equals max{A, B}, which is how they are computed here (max first, then
power), so the value is exact and independent of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .corpus import SmoothFunction
from .errors import ParameterError, QuadratureError
from .numerics import (DEFAULT_QUAD_BUDGET, DEFAULT_QUAD_TOL, Interval,
                       QuadratureResult, beta, conjugate_exponent, integrate)
from .quasiconvex import (DEFAULT_QC_GRID, DEFAULT_QC_TOL,
                          QuasiConvexityCertificate, check_quasi_convex)

DEFAULT_MARGIN_TOL = 1e-9
RATIO_DEGENERATE_TOL = 1e-9

# Exponent parameter kinds.
EXP_NONE = "none"
EXP_HOLDER_P = "p"      # requires p > 1; conjugate q = p/(p-1) enters the hypothesis
EXP_POWER_Q = "q"       # requires q >= 1

# Left-hand deviation kinds.
LHS_TRAPEZOID = "trapezoid"
LHS_TRAPEZOID_CORRECTED = "trapezoid_corrected"
LHS_MIDPOINT_CORRECTED = "midpoint_corrected"


@dataclass(frozen=True)
class TheoremSpec:
    tag: str
    derivative_order: int
    lhs_kind: str
    exponent_kind: str


THEOREMS: dict[str, TheoremSpec] = {
    spec.tag: spec for spec in (
        TheoremSpec("T1_2", 1, LHS_TRAPEZOID, EXP_NONE),
        TheoremSpec("T1_3", 1, LHS_TRAPEZOID, EXP_HOLDER_P),
        TheoremSpec("T1_4", 2, LHS_TRAPEZOID, EXP_NONE),
        TheoremSpec("T1_5", 3, LHS_TRAPEZOID_CORRECTED, EXP_NONE),
        TheoremSpec("T1_6", 3, LHS_TRAPEZOID_CORRECTED, EXP_HOLDER_P),
        TheoremSpec("T1_7", 3, LHS_TRAPEZOID_CORRECTED, EXP_POWER_Q),
        TheoremSpec("ME1", 4, LHS_TRAPEZOID_CORRECTED, EXP_NONE),
        TheoremSpec("ME2", 4, LHS_TRAPEZOID_CORRECTED, EXP_HOLDER_P),
        TheoremSpec("ME3", 4, LHS_TRAPEZOID_CORRECTED, EXP_POWER_Q),
        TheoremSpec("ME4", 3, LHS_MIDPOINT_CORRECTED, EXP_NONE),
        TheoremSpec("ME5", 3, LHS_MIDPOINT_CORRECTED, EXP_HOLDER_P),
        TheoremSpec("ME6", 3, LHS_MIDPOINT_CORRECTED, EXP_POWER_Q),
    )
}

THEOREM_ORDER = tuple(THEOREMS)


def theorem_spec(tag: str) -> TheoremSpec:
    try:
        return THEOREMS[tag]
    except KeyError:
        raise ParameterError(
            f"unknown theorem tag {tag!r}, expected one of {', '.join(THEOREM_ORDER)}"
        ) from None


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    function: str
    interval: Interval
    exponent: Optional[float]
    lhs: float
    rhs: float
    margin: float            # rhs - lhs
    ratio: float             # lhs / rhs, 0 for the degenerate 0/0 case
    hypothesis: QuasiConvexityCertificate
    passed: bool             # margin >= -tol and hypothesis certified


def _require_converged(result: QuadratureResult, what: str) -> QuadratureResult:
    if not result.converged:
        raise QuadratureError(
            f"{what}: quadrature budget exhausted "
            f"(error estimate {result.error_estimate:.3e} after {result.evaluations} evaluations)",
            result,
        )
    return result


def _avg_integral(f: SmoothFunction, interval: Interval, quad_tol: float,
                  quad_budget: int, integral: QuadratureResult | None) -> float:
    if integral is None:
        integral = integrate(f.func, interval, quad_tol, quad_budget)
    _require_converged(integral, f"integral of {f.name} over [{interval.a}, {interval.b}]")
    return integral.value / interval.width


def lhs_trapezoid(f: SmoothFunction, interval: Interval,
                  quad_tol: float = DEFAULT_QUAD_TOL,
                  quad_budget: int = DEFAULT_QUAD_BUDGET,
                  integral: QuadratureResult | None = None) -> float:
    """|(f(a)+f(b))/2 - avg(f)|."""
    avg = _avg_integral(f, interval, quad_tol, quad_budget, integral)
    return abs(0.5 * (float(f(interval.a)) + float(f(interval.b))) - avg)


def lhs_trapezoid_corrected(f: SmoothFunction, interval: Interval,
                            quad_tol: float = DEFAULT_QUAD_TOL,
                            quad_budget: int = DEFAULT_QUAD_BUDGET,
                            integral: QuadratureResult | None = None) -> float:
    """|(f(a)+f(b))/2 - avg(f) - (w/12)*(f'(b)-f'(a))|."""
    avg = _avg_integral(f, interval, quad_tol, quad_budget, integral)
    d1 = f.deriv(1)
    w = interval.width
    return abs(0.5 * (float(f(interval.a)) + float(f(interval.b))) - avg
               - (w / 12.0) * (float(d1(interval.b)) - float(d1(interval.a))))


def lhs_midpoint_corrected(f: SmoothFunction, interval: Interval,
                           quad_tol: float = DEFAULT_QUAD_TOL,
                           quad_budget: int = DEFAULT_QUAD_BUDGET,
                           integral: QuadratureResult | None = None) -> float:
    """|f((a+b)/2) - avg(f) + (w/24)*(f'(b)-f'(a))|."""
    avg = _avg_integral(f, interval, quad_tol, quad_budget, integral)
    d1 = f.deriv(1)
    w = interval.width
    return abs(float(f(interval.midpoint)) - avg
               + (w / 24.0) * (float(d1(interval.b)) - float(d1(interval.a))))


_LHS_FUNCS: dict[str, Callable] = {
    LHS_TRAPEZOID: lhs_trapezoid,
    LHS_TRAPEZOID_CORRECTED: lhs_trapezoid_corrected,
    LHS_MIDPOINT_CORRECTED: lhs_midpoint_corrected,
}


def validate_exponent(tag: str, exponent: Optional[float]) -> Optional[float]:
    """Enforce the exponent rule of a tag; returns the exponent unchanged."""
    kind = theorem_spec(tag).exponent_kind
    if kind == EXP_NONE:
        if exponent is not None:
            raise ParameterError(f"{tag} takes no exponent parameter, got {exponent}")
        return None
    if exponent is None:
        need = "p > 1" if kind == EXP_HOLDER_P else "q >= 1"
        raise ParameterError(f"{tag} requires an exponent {need}")
    if kind == EXP_HOLDER_P and not exponent > 1.0:
        raise ParameterError(f"{tag} requires p > 1, got {exponent}")
    if kind == EXP_POWER_Q and not exponent >= 1.0:
        raise ParameterError(f"{tag} requires q >= 1, got {exponent}")
    return float(exponent)


def endpoint_derivative_max(f: SmoothFunction, interval: Interval, order: int) -> float:
    d = f.deriv(order)
    return max(abs(float(d(interval.a))), abs(float(d(interval.b))))


def rhs_bound(tag: str, f: SmoothFunction, interval: Interval,
              exponent: Optional[float] = None) -> float:
    """Right-hand side of the tagged rule from endpoint derivative magnitudes.

    The (max{A^q, B^q})^(1/q) terms are computed max-first, so
    q-parameterized bounds are exactly q-independent.
    """
    spec = theorem_spec(tag)
    exponent = validate_exponent(tag, exponent)
    w = interval.width
    m = endpoint_derivative_max(f, interval, spec.derivative_order)
    if tag == "T1_2":
        return (w / 4.0) * m
    if tag == "T1_3":
        p = exponent
        return w / (2.0 * (p + 1.0) ** (1.0 / p)) * m
    if tag == "T1_4":
        return (w ** 2 / 12.0) * m
    if tag in ("T1_5", "T1_7"):
        return (w ** 3 / 192.0) * m
    if tag == "T1_6":
        p = exponent
        return (w ** 3 / 96.0) * (1.0 / (p + 1.0)) ** (1.0 / p) * m
    if tag in ("ME1", "ME3"):
        return (w ** 4 / 720.0) * m
    if tag == "ME2":
        p = exponent
        return (w ** 4 / 24.0) * beta(2.0 * p + 1.0, 2.0 * p + 1.0) ** (1.0 / p) * m
    if tag in ("ME4", "ME6"):
        return (w ** 3 / 192.0) * m
    if tag == "ME5":
        p = exponent
        return (w ** 3 / 96.0) * (1.0 / (p + 1.0)) ** (1.0 / p) * m
    raise AssertionError(tag)


def hypothesis_exponent(tag: str, exponent: Optional[float]) -> float:
    """Power e such that the rule's hypothesis is quasi-convexity of
    |derivative|^e on the interval.
    """
    spec = theorem_spec(tag)
    exponent = validate_exponent(tag, exponent)
    if spec.exponent_kind == EXP_NONE:
        return 1.0
    if spec.exponent_kind == EXP_HOLDER_P:
        return conjugate_exponent(exponent).q
    return exponent


def hypothesis_function(f: SmoothFunction, order: int, power: float) -> Callable:
    d = f.deriv(order)
    if power == 1.0:
        return lambda x: np.abs(d(x))
    return lambda x: np.abs(d(x)) ** power


def certify_hypothesis(tag: str, f: SmoothFunction, interval: Interval,
                       exponent: Optional[float] = None,
                       qc_grid: int = DEFAULT_QC_GRID,
                       qc_tol: float = DEFAULT_QC_TOL) -> QuasiConvexityCertificate:
    """Certificate for quasi-convexity of |derivative|^e, the tag's hypothesis."""
    spec = theorem_spec(tag)
    e = hypothesis_exponent(tag, exponent)
    g = hypothesis_function(f, spec.derivative_order, e)
    return check_quasi_convex(g, interval, qc_grid, qc_tol)


def bound_ratio(lhs: float, rhs: float, margin_tol: float = DEFAULT_MARGIN_TOL) -> float:
    """lhs/rhs with the degenerate cases pinned down.

    Both sides below the degeneracy tolerance count as 0 (a rule applied
    to a polynomial of lower degree than its derivative order).  A zero
    right side against a genuinely positive left side is the refutation
    signal and maps to infinity.
    """
    if rhs <= RATIO_DEGENERATE_TOL:
        return 0.0 if lhs <= rhs + margin_tol else math.inf
    return lhs / rhs


def check_bound(tag: str, f: SmoothFunction, interval: Interval,
                exponent: Optional[float] = None,
                quad_tol: float = DEFAULT_QUAD_TOL,
                quad_budget: int = DEFAULT_QUAD_BUDGET,
                margin_tol: float = DEFAULT_MARGIN_TOL,
                qc_grid: int = DEFAULT_QC_GRID,
                qc_tol: float = DEFAULT_QC_TOL,
                integral: QuadratureResult | None = None,
                hypothesis: QuasiConvexityCertificate | None = None) -> BoundReport:
    """Full verdict for one rule instance.

    A refuted hypothesis does not abort the check: the inequality is still
    evaluated and both facts are reported, with passed = False.
    ``integral`` and ``hypothesis`` accept precomputed values so batch
    runs can share work; they must match (f, interval) when given.
    """
    spec = theorem_spec(tag)
    exponent = validate_exponent(tag, exponent)
    lhs = _LHS_FUNCS[spec.lhs_kind](f, interval, quad_tol, quad_budget, integral)
    rhs = rhs_bound(tag, f, interval, exponent)
    if hypothesis is None:
        hypothesis = certify_hypothesis(tag, f, interval, exponent, qc_grid, qc_tol)
    margin = rhs - lhs
    return BoundReport(
        theorem=tag, function=f.name, interval=interval, exponent=exponent,
        lhs=lhs, rhs=rhs, margin=margin,
        ratio=bound_ratio(lhs, rhs, margin_tol),
        hypothesis=hypothesis,
        passed=bool(margin >= -margin_tol and hypothesis.certified),
    )
