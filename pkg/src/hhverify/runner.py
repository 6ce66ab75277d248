"""Batch runner: executes configured checks and assembles a report.

Records are produced as JSON-shaped dicts with a fixed field order, then
sorted by a deterministic key, so two runs with the same configuration
yield byte-identical output (the generated_at timestamp aside).  Shared
work (the average integral per function/interval pair and each distinct
quasi-convexity certificate) is computed once up front; those cache
phases may run on a thread pool without affecting the result.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .bounds import (THEOREM_ORDER, THEOREMS, check_bound, certify_hypothesis,
                     hypothesis_exponent, theorem_spec)
from .corpus import (DEFAULT_ALPHA_GRID, DEFAULT_SIN_DOMAIN, SmoothFunction,
                     admissible_intervals, builtin_corpus, corpus_by_name)
from .errors import ConfigError, QuadratureError
from .identities import IDENTITY_IDS, IdentityReport, check_identity
from .means import (APPLICATION_SOURCE, APPLICATION_TAGS, APPLICATION_VARIANTS,
                    ApplicationVerdict, application_check)
from .numerics import Interval, integrate
from .quasiconvex import QuasiConvexityCertificate
from .search import (EXPONENT_SEARCH_TAGS, SearchResult, best_exponent,
                     worst_case_alpha)

ALL_TASKS = ("identities", "bounds", "applications", "searches")
OUTPUT_FORMATS = ("json", "csv", "markdown")

DEFAULT_INTERVALS = (
    (0.25, 0.75), (0.3, 1.2), (0.5, 1.0), (0.25, 1.25), (0.4, 0.9),
    (0.0, 1.0), (1.0, 2.0), (0.5, 2.5), (1.0, 3.0),
    (-1.0, 1.0), (-2.0, 0.5), (2.0, 4.0),
)

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_REFUTED = "refuted_hypothesis"
STATUS_NON_CONVERGED = "non_converged"


@dataclass
class RunConfig:
    """Everything a batch run depends on; defaults reproduce the full sweep."""

    tasks: tuple[str, ...] = ALL_TASKS
    corpus: Optional[tuple[str, ...]] = None  # None selects every built-in
    intervals: tuple[tuple[float, float], ...] = DEFAULT_INTERVALS
    theorems: tuple[str, ...] = THEOREM_ORDER
    identities: tuple[str, ...] = IDENTITY_IDS
    applications: tuple[str, ...] = APPLICATION_TAGS
    variants: tuple[str, ...] = APPLICATION_VARIANTS
    p_grid: tuple[float, ...] = (2.0,)
    q_grid: tuple[float, ...] = (2.0,)
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    quad_tol: float = 1e-10
    quad_budget: int = 1_000_000
    residual_tol: float = 1e-8
    margin_tol: float = 1e-9
    qc_grid: int = 101
    qc_tol: float = 1e-12
    sin_domain: tuple[float, float] = (DEFAULT_SIN_DOMAIN.a, DEFAULT_SIN_DOMAIN.b)
    search_p_theorems: tuple[str, ...] = EXPONENT_SEARCH_TAGS
    search_p_function: str = "x^4"
    search_p_interval: tuple[float, float] = (0.0, 1.0)
    search_p_range: tuple[float, float] = (1.01, 50.0)
    search_alpha_theorems: tuple[str, ...] = ("ME1", "ME4")
    search_alpha_interval: tuple[float, float] = (1.0, 2.0)
    search_alpha_range: tuple[float, float] = (0.01, 1.0)
    format: str = "json"
    out: Optional[str] = None

    def validate(self) -> None:
        """Raise ConfigError naming the first offending field."""
        for name in ("tasks", "intervals", "theorems", "identities",
                     "applications", "variants", "p_grid", "q_grid", "alpha_grid"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{name}: must not be empty")
        for task in self.tasks:
            if task not in ALL_TASKS:
                raise ConfigError(f"tasks: unknown task {task!r}")
        if self.corpus is not None and len(self.corpus) == 0:
            raise ConfigError("corpus: must not be empty when given")
        for tag in self.theorems:
            if tag not in THEOREMS:
                raise ConfigError(f"theorems: unknown tag {tag!r}")
        for ident in self.identities:
            if ident not in IDENTITY_IDS:
                raise ConfigError(f"identities: unknown id {ident!r}")
        for tag in self.applications:
            if tag not in APPLICATION_TAGS:
                raise ConfigError(f"applications: unknown tag {tag!r}")
        for variant in self.variants:
            if variant not in APPLICATION_VARIANTS:
                raise ConfigError(f"variants: unknown variant {variant!r}")
        for a, b in self.intervals:
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise ConfigError(f"intervals: invalid interval [{a}, {b}]")
        for p in self.p_grid:
            if not p > 1.0:
                raise ConfigError(f"p_grid: requires p > 1, got {p}")
        for q in self.q_grid:
            if not q >= 1.0:
                raise ConfigError(f"q_grid: requires q >= 1, got {q}")
        for alpha in self.alpha_grid:
            if not 0.0 < alpha <= 1.0:
                raise ConfigError(f"alpha_grid: requires 0 < alpha <= 1, got {alpha}")
        for name in ("quad_tol", "residual_tol", "margin_tol", "qc_tol"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name}: must be positive")
        if self.quad_budget < 15:
            raise ConfigError(f"quad_budget: below one quadrature panel, got {self.quad_budget}")
        if self.qc_grid < 3:
            raise ConfigError(f"qc_grid: must be at least 3, got {self.qc_grid}")
        a, b = self.sin_domain
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ConfigError(f"sin_domain: invalid interval [{a}, {b}]")
        for tag in self.search_p_theorems:
            if tag not in EXPONENT_SEARCH_TAGS:
                raise ConfigError(f"search_p_theorems: {tag!r} takes no Holder exponent")
        for tag in self.search_alpha_theorems:
            if tag not in THEOREMS:
                raise ConfigError(f"search_alpha_theorems: unknown tag {tag!r}")
        lo, hi = self.search_p_range
        if not (1.0 < lo < hi):
            raise ConfigError(f"search_p_range: requires 1 < lo < hi, got ({lo}, {hi})")
        lo, hi = self.search_alpha_range
        if not (0.0 < lo < hi <= 1.0):
            raise ConfigError(f"search_alpha_range: requires 0 < lo < hi <= 1, got ({lo}, {hi})")
        for name in ("search_p_interval", "search_alpha_interval"):
            a, b = getattr(self, name)
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise ConfigError(f"{name}: invalid interval [{a}, {b}]")
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format: must be one of {', '.join(OUTPUT_FORMATS)}, got {self.format!r}")

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = [list(v) if isinstance(v, tuple) else v for v in value]
            out[f.name] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"{sorted(unknown)[0]}: unknown configuration key")
        kwargs = {}
        for f in fields(cls):
            if f.name not in data:
                continue
            value = data[f.name]
            if isinstance(value, list):
                value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
            kwargs[f.name] = value
        config = cls(**kwargs)
        config.validate()
        return config


@dataclass
class RunReport:
    config: RunConfig
    identity_checks: list[dict] = field(default_factory=list)
    bound_checks: list[dict] = field(default_factory=list)
    application_checks: list[dict] = field(default_factory=list)
    searches: list[dict] = field(default_factory=list)
    generated_at: str = ""

    @property
    def records(self) -> list[dict]:
        return (self.identity_checks + self.bound_checks
                + self.application_checks + self.searches)

    def summary(self) -> dict:
        counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_REFUTED: 0,
                  STATUS_NON_CONVERGED: 0}
        for record in self.records:
            counts[record["status"]] += 1
        return {
            "total": len(self.records),
            "pass": counts[STATUS_PASS],
            "fail": counts[STATUS_FAIL],
            "refuted_hypothesis": counts[STATUS_REFUTED],
            "non_converged": counts[STATUS_NON_CONVERGED],
        }

    def exit_code(self) -> int:
        """0 all pass; 2 any fail or refuted hypothesis; 3 any non-convergence."""
        s = self.summary()
        if s["fail"] or s["refuted_hypothesis"]:
            return 2
        if s["non_converged"]:
            return 3
        return 0

    def to_dict(self) -> dict:
        return {
            "tool": "hhverify",
            "version": __version__,
            "generated_at": self.generated_at,
            "config": self.config.to_dict(),
            "summary": self.summary(),
            "identity_checks": self.identity_checks,
            "bound_checks": self.bound_checks,
            "application_checks": self.application_checks,
            "searches": self.searches,
        }


def _map(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _certificate_dict(cert: QuasiConvexityCertificate) -> dict:
    counterexample = None
    if cert.counterexample is not None:
        w = cert.counterexample
        counterexample = {
            "x": w.x, "y": w.y, "lam": w.lam,
            "mixed_value": w.mixed_value,
            "value_x": w.value_x, "value_y": w.value_y,
            "violation": w.violation,
        }
    return {
        "verdict": cert.verdict,
        "grid_size": cert.grid_size,
        "tol": cert.tol,
        "max_violation": cert.max_violation,
        "counterexample": counterexample,
    }


def _identity_record(report: IdentityReport, residual_tol: float) -> dict:
    if not report.converged:
        status = STATUS_NON_CONVERGED
    elif report.residual <= residual_tol:
        status = STATUS_PASS
    else:
        status = STATUS_FAIL
    return {
        "kind": "identity",
        "id": report.identity_id,
        "function": report.function,
        "interval": [report.interval.a, report.interval.b],
        "lhs": report.lhs,
        "rhs": report.rhs,
        "residual": report.residual,
        "quadrature_error": report.quadrature_error,
        "converged": report.converged,
        "status": status,
        "note": report.note,
    }


def _bound_record(tag: str, f: SmoothFunction, interval: Interval,
                  exponent: Optional[float], config: RunConfig,
                  integral, hypothesis) -> dict:
    base = {
        "kind": "bound",
        "theorem": tag,
        "function": f.name,
        "interval": [interval.a, interval.b],
        "exponent": exponent,
    }
    try:
        report = check_bound(
            tag, f, interval, exponent,
            quad_tol=config.quad_tol, quad_budget=config.quad_budget,
            margin_tol=config.margin_tol, qc_grid=config.qc_grid,
            qc_tol=config.qc_tol, integral=integral, hypothesis=hypothesis)
    except QuadratureError as err:
        base.update({
            "lhs": None, "rhs": None, "margin": None, "ratio": None,
            "pass": False, "hypothesis": None,
            "status": STATUS_NON_CONVERGED, "note": str(err),
        })
        return base
    if not report.hypothesis.certified:
        status = STATUS_REFUTED
    elif report.passed:
        status = STATUS_PASS
    else:
        status = STATUS_FAIL
    base.update({
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "ratio": report.ratio,
        "pass": report.passed,
        "hypothesis": _certificate_dict(report.hypothesis),
        "status": status,
        "note": "",
    })
    return base


def _application_record(verdict: ApplicationVerdict) -> dict:
    return {
        "kind": "application",
        "theorem": verdict.theorem,
        "variant": verdict.variant,
        "a": verdict.a,
        "b": verdict.b,
        "alpha": verdict.alpha,
        "exponent": verdict.exponent,
        "lhs": verdict.lhs,
        "rhs": verdict.rhs,
        "pass": verdict.passed,
        "status": STATUS_PASS if verdict.passed else STATUS_FAIL,
        "note": verdict.note,
    }


def _search_record(search: str, tag: str, function: Optional[str],
                   interval: Interval, search_range: tuple[float, float],
                   exponent: Optional[float], result: SearchResult) -> dict:
    return {
        "kind": "search",
        "search": search,
        "theorem": tag,
        "function": function,
        "interval": [interval.a, interval.b],
        "range": [search_range[0], search_range[1]],
        "exponent": exponent,
        "objective": result.objective,
        "parameters": list(result.parameters),
        "iterations": result.iterations,
        "converged": result.converged,
        "status": STATUS_PASS if result.converged else STATUS_NON_CONVERGED,
        "note": result.note,
    }


def _exponents_for(tag: str, config: RunConfig) -> list[Optional[float]]:
    kind = theorem_spec(tag).exponent_kind
    if kind == "p":
        return list(config.p_grid)
    if kind == "q":
        return list(config.q_grid)
    return [None]


def _application_exponents(tag: str, config: RunConfig) -> list[Optional[float]]:
    source, _ = APPLICATION_SOURCE[tag]
    return _exponents_for(source, config)


def run(config: RunConfig, threads: int = 1) -> RunReport:
    """Execute every configured check and return the assembled report."""
    config.validate()
    corpus = builtin_corpus(alpha_grid=config.alpha_grid,
                            sin_domain=Interval(*config.sin_domain))
    by_name = corpus_by_name(corpus)
    if config.corpus is not None:
        for name in config.corpus:
            if name not in by_name:
                raise ConfigError(
                    f"corpus: unknown function {name!r}; available: {', '.join(by_name)}")
        corpus = [by_name[name] for name in config.corpus]
    grid = [Interval(a, b) for a, b in config.intervals]
    pairs = [(f, iv) for f in corpus for iv in admissible_intervals(f, grid)]

    report = RunReport(config=config,
                       generated_at=datetime.now(timezone.utc).isoformat())

    need_integrals = ("identities" in config.tasks or "bounds" in config.tasks)
    integral_cache: dict = {}
    if need_integrals:
        keys = [(f.name, iv) for f, iv in pairs]
        results = _map(
            lambda p: integrate(p[0].func, p[1], config.quad_tol, config.quad_budget),
            pairs, threads)
        integral_cache = dict(zip(keys, results))

    if "identities" in config.tasks:
        jobs = [(ident, f, iv)
                for f, iv in pairs for ident in config.identities]

        def identity_job(job):
            ident, f, iv = job
            rep = check_identity(ident, f, iv, config.quad_tol, config.quad_budget,
                                 integral=integral_cache[(f.name, iv)])
            return _identity_record(rep, config.residual_tol)

        report.identity_checks = sorted(
            _map(identity_job, jobs, threads),
            key=lambda r: (r["id"], r["function"], r["interval"]))

    if "bounds" in config.tasks:
        hypo_keys: dict = {}
        for f, iv in pairs:
            for tag in config.theorems:
                spec = THEOREMS[tag]
                for exponent in _exponents_for(tag, config):
                    e = hypothesis_exponent(tag, exponent)
                    hypo_keys.setdefault(
                        (f.name, iv, spec.derivative_order, e), (tag, f, iv, exponent))

        def hypo_job(item):
            key, (tag, f, iv, exponent) = item
            return key, certify_hypothesis(tag, f, iv, exponent,
                                           config.qc_grid, config.qc_tol)

        hypo_cache = dict(_map(hypo_job, list(hypo_keys.items()), threads))

        records = []
        for f, iv in pairs:
            for tag in config.theorems:
                spec = THEOREMS[tag]
                for exponent in _exponents_for(tag, config):
                    e = hypothesis_exponent(tag, exponent)
                    records.append(_bound_record(
                        tag, f, iv, exponent, config,
                        integral=integral_cache[(f.name, iv)],
                        hypothesis=hypo_cache[(f.name, iv, spec.derivative_order, e)]))
        order = {tag: i for i, tag in enumerate(THEOREM_ORDER)}
        report.bound_checks = sorted(
            records,
            key=lambda r: (order[r["theorem"]], r["function"], r["interval"],
                           -1.0 if r["exponent"] is None else r["exponent"]))

    if "applications" in config.tasks:
        positive = [iv for iv in grid if iv.a > 0.0]
        records = []
        for tag in config.applications:
            for variant in config.variants:
                for iv in positive:
                    for alpha in config.alpha_grid:
                        for exponent in _application_exponents(tag, config):
                            records.append(_application_record(application_check(
                                tag, variant, iv.a, iv.b, alpha, exponent,
                                margin_tol=config.margin_tol)))
        report.application_checks = sorted(
            records,
            key=lambda r: (r["theorem"], r["variant"], r["a"], r["b"], r["alpha"],
                           -1.0 if r["exponent"] is None else r["exponent"]))

    if "searches" in config.tasks:
        records = []
        p_interval = Interval(*config.search_p_interval)
        p_function = by_name.get(config.search_p_function)
        if p_function is None:
            raise ConfigError(
                f"search_p_function: unknown function {config.search_p_function!r}")
        for tag in config.search_p_theorems:
            result = best_exponent(tag, p_function, p_interval, config.search_p_range)
            records.append(_search_record(
                "best_exponent", tag, p_function.name, p_interval,
                config.search_p_range, None, result))
        alpha_interval = Interval(*config.search_alpha_interval)
        for tag in config.search_alpha_theorems:
            kind = theorem_spec(tag).exponent_kind
            exponent = None
            if kind == "p":
                exponent = config.p_grid[0]
            elif kind == "q":
                exponent = config.q_grid[0]
            result = worst_case_alpha(tag, alpha_interval, config.search_alpha_range,
                                      exponent, config.quad_tol, config.quad_budget)
            records.append(_search_record(
                "worst_case_alpha", tag, None, alpha_interval,
                config.search_alpha_range, exponent, result))
        report.searches = sorted(
            records, key=lambda r: (r["search"], r["theorem"], r["function"] or ""))

    return report
