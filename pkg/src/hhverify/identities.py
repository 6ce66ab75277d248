"""Residual verification of the two exact integral identities.

Both identities express a quadrature-rule defect through a weighted
integral of a higher derivative:

  L1 (trapezoid defect):
      avg(f) + (w/12)*(f'(b) - f'(a)) - (f(a)+f(b))/2
        = (w^4/24) * I[0,1]( (t(1-t))^2 * f''''(a*t + (1-t)*b) )

  L2 (midpoint defect):
      f((a+b)/2) - avg(f) + (w/24)*(f'(b) - f'(a))
        = (w^3/24) * ( I[0,1/2](K(t) f'''(t*a+(1-t)*b))
                     - I[0,1/2](K(t) f'''(t*b+(1-t)*a)) )
      with kernel K(t) = t(1-2t)(1+2t)

where avg(f) = (1/w) * integral of f over [a, b] and w = b - a.  Each side
is computed independently by quadrature and the residual |lhs - rhs| is
reported; the identities hold exactly, so the residual is pure numerical
error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .corpus import SmoothFunction
from .numerics import (DEFAULT_QUAD_BUDGET, DEFAULT_QUAD_TOL, Interval,
                       QuadratureResult, integrate)

IDENTITY_IDS = ("L1", "L2")


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    function: str
    interval: Interval
    lhs: float
    rhs: float
    residual: Optional[float]  # None unless every quadrature converged
    quadrature_error: float
    converged: bool
    note: str = ""


def _average_integral(f: SmoothFunction, interval: Interval, tol: float,
                      budget: int, integral: QuadratureResult | None) -> QuadratureResult:
    if integral is None:
        integral = integrate(f.func, interval, tol, budget)
    return integral


def trapezoid_defect_identity(f: SmoothFunction, interval: Interval,
                              quad_tol: float = DEFAULT_QUAD_TOL,
                              quad_budget: int = DEFAULT_QUAD_BUDGET,
                              integral: QuadratureResult | None = None) -> IdentityReport:
    """Check identity L1 on f over the interval."""
    a, b = interval.a, interval.b
    w = interval.width
    base = _average_integral(f, interval, quad_tol, quad_budget, integral)
    d1 = f.deriv(1)
    lhs = base.value / w + (w / 12.0) * (float(d1(b)) - float(d1(a))) \
        - 0.5 * (float(f(a)) + float(f(b)))

    d4 = f.deriv(4)
    kernel = integrate(lambda t: (t * (1.0 - t)) ** 2 * d4(a * t + (1.0 - t) * b),
                       Interval(0.0, 1.0), quad_tol, quad_budget)
    rhs = (w ** 4 / 24.0) * kernel.value

    quad_err = base.error_estimate / w + (w ** 4 / 24.0) * kernel.error_estimate
    converged = base.converged and kernel.converged
    return IdentityReport(
        identity_id="L1", function=f.name, interval=interval,
        lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs) if converged else None,
        quadrature_error=quad_err, converged=converged,
        note="" if converged else "quadrature did not converge within budget",
    )


def midpoint_defect_identity(f: SmoothFunction, interval: Interval,
                             quad_tol: float = DEFAULT_QUAD_TOL,
                             quad_budget: int = DEFAULT_QUAD_BUDGET,
                             integral: QuadratureResult | None = None) -> IdentityReport:
    """Check identity L2 on f over the interval."""
    a, b = interval.a, interval.b
    w = interval.width
    base = _average_integral(f, interval, quad_tol, quad_budget, integral)
    d1 = f.deriv(1)
    lhs = float(f(interval.midpoint)) - base.value / w \
        + (w / 24.0) * (float(d1(b)) - float(d1(a)))

    d3 = f.deriv(3)
    half = Interval(0.0, 0.5)
    side_a = integrate(
        lambda t: t * (1.0 - 2.0 * t) * (1.0 + 2.0 * t) * d3(t * a + (1.0 - t) * b),
        half, quad_tol, quad_budget)
    side_b = integrate(
        lambda t: t * (1.0 - 2.0 * t) * (1.0 + 2.0 * t) * d3(t * b + (1.0 - t) * a),
        half, quad_tol, quad_budget)
    rhs = (w ** 3 / 24.0) * (side_a.value - side_b.value)

    quad_err = base.error_estimate / w \
        + (w ** 3 / 24.0) * (side_a.error_estimate + side_b.error_estimate)
    converged = base.converged and side_a.converged and side_b.converged
    return IdentityReport(
        identity_id="L2", function=f.name, interval=interval,
        lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs) if converged else None,
        quadrature_error=quad_err, converged=converged,
        note="" if converged else "quadrature did not converge within budget",
    )


def check_identity(identity_id: str, f: SmoothFunction, interval: Interval,
                   quad_tol: float = DEFAULT_QUAD_TOL,
                   quad_budget: int = DEFAULT_QUAD_BUDGET,
                   integral: QuadratureResult | None = None) -> IdentityReport:
    """Dispatch on the identity tag (L1 or L2)."""
    if identity_id == "L1":
        return trapezoid_defect_identity(f, interval, quad_tol, quad_budget, integral)
    if identity_id == "L2":
        return midpoint_defect_identity(f, interval, quad_tol, quad_budget, integral)
    raise ValueError(f"unknown identity id {identity_id!r}, expected one of {IDENTITY_IDS}")
