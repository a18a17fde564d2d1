"""Numerical verification laboratory for fractional Ostrowski-type inequalities.

The package evaluates Riemann-Liouville fractional integrals with
singularity-aware quadrature, verifies the integral identity that underlies
a family of fractional Ostrowski-type bounds, and empirically certifies
those bounds (and their classical alpha=1 reductions) over parameter sweeps
of certified s-convex and s-concave test functions.

Layers, bottom up: ``specfun`` (gamma, log-gamma, beta), ``funcatalog``
(test functions and sampled hypothesis certificates), ``fracint``
(fractional integral operators and quadrature), ``identity`` (residual
checks for the core identity), ``bounds`` (inequality sides and margins),
``harness`` (parameter sweeps and reports), ``cli`` (command line).
"""

from __future__ import annotations

from ._version import __version__
from .bounds import (
    CLASSICAL_IDS,
    DEFAULT_MARGIN_TOL,
    FRACTIONAL_IDS,
    REDUCTION_TOL,
    THEOREM_IDS,
    CertCache,
    InequalityReport,
    classical_suite,
    evaluate_theorem,
    lhs_classical,
    lhs_frac,
    reduction_check,
    rhs_alomari_hoelder,
    rhs_alomari_msconvex,
    rhs_alomari_powermean,
    rhs_alomari_sconcave,
    rhs_e8_printed,
    rhs_ostrowski,
    rhs_thm1,
    rhs_thm2,
    rhs_thm3,
    rhs_thm4,
)
from .errors import (
    CertificateError,
    ConfigError,
    ConvergenceError,
    DomainError,
    EmptyIntervalError,
    FracIneqError,
)
from .fracint import (
    DEFAULT_QUADRATURE,
    RULE_ADAPTIVE,
    RULE_GAUSS_JACOBI,
    RULE_ORACLE,
    Estimate,
    FracParams,
    QuadratureConfig,
    lemma_pair,
    moment_integral,
    oracle,
    plain_integral,
    rl_left,
    rl_right,
    weighted_endpoint_integral,
)
from .funcatalog import (
    CatalogEntry,
    ConvexityCertificate,
    DerivBound,
    Function1D,
    builtin_catalog,
    catalog_names,
    certify,
    derivative_bound,
    get_entry,
)
from .harness import (
    CSV_HEADER,
    THREADS_ENV_VAR,
    ResidualRecord,
    SweepConfig,
    SweepResult,
    default_config,
    emit_report,
    render_csv,
    render_json,
    run_sweep,
)
from .identity import (
    DEFAULT_IDENTITY_TOL,
    IdentityResidual,
    LemmaPieces,
    check_classical_lemma,
    check_e1,
    check_e4_e5,
    compute_pieces,
)
from .specfun import beta, gamma, ln_gamma

__all__ = [
    "__version__",
    # errors
    "FracIneqError",
    "DomainError",
    "EmptyIntervalError",
    "ConfigError",
    "CertificateError",
    "ConvergenceError",
    # special functions
    "gamma",
    "ln_gamma",
    "beta",
    # catalog
    "Function1D",
    "ConvexityCertificate",
    "DerivBound",
    "CatalogEntry",
    "certify",
    "derivative_bound",
    "builtin_catalog",
    "catalog_names",
    "get_entry",
    # fractional integrals
    "Estimate",
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "RULE_ADAPTIVE",
    "RULE_GAUSS_JACOBI",
    "RULE_ORACLE",
    "FracParams",
    "weighted_endpoint_integral",
    "plain_integral",
    "moment_integral",
    "rl_left",
    "rl_right",
    "lemma_pair",
    "oracle",
    # identity
    "DEFAULT_IDENTITY_TOL",
    "IdentityResidual",
    "LemmaPieces",
    "compute_pieces",
    "check_e1",
    "check_e4_e5",
    "check_classical_lemma",
    # bounds
    "THEOREM_IDS",
    "FRACTIONAL_IDS",
    "CLASSICAL_IDS",
    "DEFAULT_MARGIN_TOL",
    "REDUCTION_TOL",
    "InequalityReport",
    "CertCache",
    "lhs_frac",
    "lhs_classical",
    "rhs_thm1",
    "rhs_thm2",
    "rhs_thm3",
    "rhs_thm4",
    "rhs_e8_printed",
    "rhs_ostrowski",
    "rhs_alomari_msconvex",
    "rhs_alomari_hoelder",
    "rhs_alomari_powermean",
    "rhs_alomari_sconcave",
    "evaluate_theorem",
    "classical_suite",
    "reduction_check",
    # harness
    "SweepConfig",
    "SweepResult",
    "ResidualRecord",
    "default_config",
    "run_sweep",
    "emit_report",
    "render_csv",
    "render_json",
    "CSV_HEADER",
    "THREADS_ENV_VAR",
]
