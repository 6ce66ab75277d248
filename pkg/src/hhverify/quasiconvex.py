"""Sampling-based quasi-convexity certification.

A function g is quasi-convex on [a, b] when
g(lam*x + (1-lam)*y) <= max(g(x), g(y)) for all x, y in [a, b] and
lam in [0, 1].  The check here scans a uniform grid of (x, y, lam)
triples; "certified" is therefore evidence at grid resolution, not a
proof, and reports record it as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .numerics import Interval, eval_on_array

DEFAULT_QC_GRID = 101
DEFAULT_QC_TOL = 1e-12


@dataclass(frozen=True)
class CounterExample:
    """A triple violating the defining inequality, with the values seen."""

    x: float
    y: float
    lam: float
    mixed_value: float
    value_x: float
    value_y: float
    violation: float


@dataclass(frozen=True)
class QuasiConvexityCertificate:
    verdict: str  # "certified" | "refuted"
    grid_size: int
    tol: float
    max_violation: float
    counterexample: Optional[CounterExample] = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"


def check_quasi_convex(g: Callable, interval: Interval, n_grid: int = DEFAULT_QC_GRID,
                       tol: float = DEFAULT_QC_TOL) -> QuasiConvexityCertificate:
    """Scan all grid pairs (x, y) and mixing weights lam for violations.

    Refutation returns the worst witness under the total order
    (largest violation, then lexicographic (x, y, lam)), so the result
    does not depend on evaluation schedule.  The maximum violation is
    reported even when certified, making near-violations visible.

    ``tol`` is relative to the magnitude of g on the grid: the absolute
    threshold is tol * max(1, max|g|), recorded in the certificate.
    Large-magnitude functions would otherwise be refuted by the rounding
    noise of the mixing arithmetic itself.
    """
    if n_grid < 3:
        raise DomainError(f"grid size must be at least 3, got {n_grid}")
    if tol < 0.0:
        raise DomainError(f"tolerance must be non-negative, got {tol}")
    xs = np.linspace(interval.a, interval.b, n_grid)
    lams = np.linspace(0.0, 1.0, n_grid)
    gx = eval_on_array(g, xs)
    tol = tol * max(1.0, float(np.max(np.abs(gx))))
    pair_max = np.maximum(gx[:, None], gx[None, :])  # max(g(x_i), g(x_j))

    best_viol = -np.inf
    best_idx: tuple[int, int, int] | None = None
    # One lam-slice at a time keeps memory at O(n^2) while preserving the
    # lexicographic witness order (x, y, lam).
    for k, lam in enumerate(lams):
        mixed = lam * xs[:, None] + (1.0 - lam) * xs[None, :]
        viol = eval_on_array(g, mixed) - pair_max
        flat = int(np.argmax(viol))
        i, j = divmod(flat, n_grid)
        v = float(viol[i, j])
        if v > best_viol:
            best_viol = v
            best_idx = (i, j, k)
        # Ties resolve to the earliest (x, y, lam) in lexicographic order;
        # scanning lam innermost would break that, so compare explicitly.
        elif v == best_viol and best_idx is not None and (i, j, k) < best_idx:
            best_idx = (i, j, k)

    assert best_idx is not None
    i, j, k = best_idx
    if best_viol > tol:
        x, y, lam = float(xs[i]), float(xs[j]), float(lams[k])
        witness = CounterExample(
            x=x, y=y, lam=lam,
            mixed_value=float(np.asarray(g(lam * x + (1.0 - lam) * y), dtype=float)),
            value_x=float(gx[i]), value_y=float(gx[j]),
            violation=best_viol,
        )
        return QuasiConvexityCertificate("refuted", n_grid, tol, best_viol, witness)
    return QuasiConvexityCertificate("certified", n_grid, tol, max(best_viol, 0.0))


@dataclass(frozen=True)
class UnimodalProfile:
    decreasing_then_increasing: bool
    split_index: int


def check_unimodal_profile(g: Callable, interval: Interval,
                           n_grid: int = DEFAULT_QC_GRID,
                           tol: float = DEFAULT_QC_TOL) -> UnimodalProfile:
    """Cheap corroborating check: the sampled profile must be
    non-increasing up to its first minimum and non-decreasing after it.
    """
    if n_grid < 3:
        raise DomainError(f"grid size must be at least 3, got {n_grid}")
    xs = np.linspace(interval.a, interval.b, n_grid)
    vals = eval_on_array(g, xs)
    split = int(np.argmin(vals))
    left_ok = bool(np.all(np.diff(vals[: split + 1]) <= tol))
    right_ok = bool(np.all(np.diff(vals[split:]) >= -tol))
    return UnimodalProfile(left_ok and right_ok, split)
