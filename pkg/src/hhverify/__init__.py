"""hhverify: numerical verification of trapezoid/midpoint-type integral
inequalities whose hypotheses are quasi-convex derivative magnitudes."""

__version__ = "0.1.0"

from .corpus import (SmoothFunction, builtin_corpus, fd_validate,
                     make_power_family)
from .errors import (ConfigError, DomainError, ParameterError,
                     QuadratureError)
from .identities import (IdentityReport, check_identity,
                         midpoint_defect_identity, trapezoid_defect_identity)
from .means import (ApplicationVerdict, LinkResiduals, MeanRequest,
                    application_check, arithmetic_mean, f_alpha_link_check,
                    generalized_log_mean)
from .numerics import (HolderPair, Interval, QuadratureResult, beta,
                       conjugate_exponent, integrate)
from .quasiconvex import (QuasiConvexityCertificate, UnimodalProfile,
                          check_quasi_convex, check_unimodal_profile)
from .bounds import (BoundReport, THEOREMS, check_bound, lhs_midpoint_corrected,
                     lhs_trapezoid, lhs_trapezoid_corrected, rhs_bound)
from .search import (SearchResult, best_exponent, tightness_ratio,
                     worst_case_alpha)
from .runner import RunConfig, RunReport, run

__all__ = [
    "__version__",
    "ApplicationVerdict", "BoundReport", "ConfigError", "DomainError",
    "HolderPair", "IdentityReport", "Interval", "LinkResiduals",
    "MeanRequest", "ParameterError", "QuadratureError", "QuadratureResult",
    "QuasiConvexityCertificate", "RunConfig", "RunReport", "SearchResult",
    "SmoothFunction", "THEOREMS", "UnimodalProfile", "application_check",
    "arithmetic_mean", "best_exponent", "beta", "builtin_corpus",
    "check_bound", "check_identity", "check_quasi_convex",
    "check_unimodal_profile", "conjugate_exponent", "f_alpha_link_check",
    "fd_validate", "generalized_log_mean", "integrate",
    "lhs_midpoint_corrected", "lhs_trapezoid", "lhs_trapezoid_corrected",
    "make_power_family", "midpoint_defect_identity", "rhs_bound", "run",
    "tightness_ratio", "trapezoid_defect_identity", "worst_case_alpha",
]
