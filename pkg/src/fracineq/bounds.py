"""Left- and right-hand sides of every inequality the package certifies.

Fractional family (parameterized by alpha > 0):

``E6``
    Derivative-bound inequality with the Gamma-ratio constant
    (1 + Gamma(alpha+1)Gamma(s+1)/Gamma(alpha+s+1)) / (alpha+s+1);
    hypothesis: |f'| s-convex, |f'| <= M.
``E7``
    Hoelder-route bound with prefactor M/(1+p*alpha)**(1/p) * (2/(s+1))**(1/q);
    hypothesis: |f'|**q s-convex, conjugate exponents p, q.
``E8proof``
    Power-mean-route bound
    M * (1/(1+alpha))**(1-1/q) * (1/(alpha+s+1))**(1/q) * (1 + ratio)**(1/q);
    hypothesis: |f'|**q s-convex, q >= 1 (no conjugate exponent needed).
    The associated *printed* bound in circulation textually duplicates E7;
    ``rhs_e8_printed`` evaluates that duplicate as a diagnostic only.
``E9``
    Midpoint-derivative bound 2**((s-1)/q) / ((1+p*alpha)**(1/p) (b-a)) times
    a weighted pair of |f'| midpoint values; hypothesis: |f'|**q s-concave.

All four share the same left-hand side: |identity LHS| from the identity
module (``lhs_frac``).

Classical suite (no alpha):

``e1``   Ostrowski bound M(b-a)[1/4 + ((x-mid)/(b-a))**2]; sharp at affine f.
``e13``  Hermite-Hadamard pair for s-convex f: 2**(s-1) f(mid) <= mean and
         mean <= (f(a)+f(b))/(s+1); reported as two rows.
``e14``  M[(x-a)**2+(b-x)**2] / ((b-a)(s+1)); hypothesis |f'| s-convex.
``t5_146``  M (2/(s+1))**(1/q) [(x-a)**2+(b-x)**2] / (2(b-a)); |f'|**q s-convex.
``t6_147``  2**((s-1)/q)/((1+p)**(1/p)(b-a)) times the weighted midpoint pair;
         |f'|**q s-concave.

Each evaluator is pure closed-form arithmetic except the left-hand sides,
which carry quadrature error budgets that the pass/fail tolerance couples to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import CertificateError, ConfigError
from .fracint import (
    DEFAULT_QUADRATURE,
    Estimate,
    FracParams,
    QuadratureConfig,
    plain_integral,
)
from .funcatalog import (
    MODE_CONCAVE,
    MODE_CONVEX,
    TARGET_F,
    TARGET_FPRIME,
    TARGET_FPRIME_POW,
    CatalogEntry,
    ConvexityCertificate,
    Function1D,
    certify,
)
from .identity import LemmaPieces, check_e1_from_pieces, compute_pieces
from .specfun import ln_gamma

__all__ = [
    "THEOREM_IDS",
    "FRACTIONAL_IDS",
    "CLASSICAL_IDS",
    "DEFAULT_MARGIN_TOL",
    "REDUCTION_TOL",
    "InequalityReport",
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
]

FRACTIONAL_IDS = ("E6", "E7", "E8proof", "E9")
CLASSICAL_IDS = ("e1", "e13", "e14", "t5_146", "t6_147")
THEOREM_IDS = FRACTIONAL_IDS + CLASSICAL_IDS

#: Default slack on inequality margins (couples with 10x the quad budget).
DEFAULT_MARGIN_TOL = 1e-9

#: Maximum closed-form deviation tolerated by reduction_check.
REDUCTION_TOL = 1e-12


@dataclass(frozen=True)
class InequalityReport:
    """One inequality instance: both sides, signed margin, and verdict.

    margin = rhs - lhs; ``holds`` is margin >= -max(margin_tol, 10 * budget).
    ``asserted`` records whether the hypothesis certificates passed; rows
    with asserted=False are informational and never count as violations.
    """

    theorem_id: str
    function: str
    prm: FracParams
    lhs: float
    rhs: float
    margin: float
    holds: bool
    quad_error_budget: float
    asserted: bool = True
    note: str = ""


def _make_report(
    theorem_id: str,
    function: str,
    prm: FracParams,
    lhs: float,
    rhs: float,
    budget: float,
    margin_tol: float,
    asserted: bool,
    note: str = "",
) -> InequalityReport:
    margin = rhs - lhs
    return InequalityReport(
        theorem_id=theorem_id,
        function=function,
        prm=prm,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        holds=bool(margin >= -max(margin_tol, 10.0 * budget)),
        quad_error_budget=float(budget),
        asserted=asserted,
        note=note,
    )


def _require(prm: FracParams, theorem_id: str, **fields) -> None:
    missing = [name for name, value in fields.items() if value is None]
    if missing:
        raise ConfigError(f"{theorem_id} requires {', '.join(missing)} to be set")


def _gamma_ratio(alpha: float, s: float) -> float:
    # Gamma(alpha+1) Gamma(s+1) / Gamma(alpha+s+1), evaluated in log space
    return math.exp(ln_gamma(alpha + 1.0) + ln_gamma(s + 1.0) - ln_gamma(alpha + s + 1.0))


# ---------------------------------------------------------------------------
# left-hand sides


def lhs_frac(
    f: Function1D,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    pieces: Optional[LemmaPieces] = None,
) -> Estimate:
    """|identity LHS| shared by E6-E9, with its quadrature error budget."""
    if pieces is None:
        pieces = compute_pieces(f, prm, cfg)
    res = check_e1_from_pieces(pieces)
    ga_over_width = (pieces.jm.error + pieces.jp.error) / (prm.b - prm.a)
    # only the operator pair contributes quadrature error to this side
    budget = math.exp(ln_gamma(prm.alpha + 1.0)) * ga_over_width
    return Estimate(abs(res.lhs), budget)


def lhs_classical(
    f: Function1D,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    mean: Optional[Estimate] = None,
) -> Estimate:
    """|f(x) - integral mean| for the classical suite."""
    if mean is None:
        mean = plain_integral(f, prm.a, prm.b, cfg)
    width = prm.b - prm.a
    return Estimate(abs(float(f.eval(prm.x)) - mean.value / width), mean.error / width)


# ---------------------------------------------------------------------------
# fractional right-hand sides


def rhs_thm1(prm: FracParams) -> float:
    """Gamma-ratio bound (E6). Requires M."""
    _require(prm, "E6", M=prm.M)
    a, b, x, alpha, s = prm.a, prm.b, prm.x, prm.alpha, prm.s
    powers = (x - a) ** (alpha + 1.0) + (b - x) ** (alpha + 1.0)
    return prm.M / (b - a) * (1.0 + _gamma_ratio(alpha, s)) * powers / (alpha + s + 1.0)


def rhs_thm2(prm: FracParams) -> float:
    """Hoelder-route bound (E7). Requires M and conjugate p, q."""
    _require(prm, "E7", M=prm.M, p=prm.p, q=prm.q)
    a, b, x, alpha, s = prm.a, prm.b, prm.x, prm.alpha, prm.s
    powers = (x - a) ** (alpha + 1.0) + (b - x) ** (alpha + 1.0)
    return (
        prm.M
        / (1.0 + prm.p * alpha) ** (1.0 / prm.p)
        * (2.0 / (s + 1.0)) ** (1.0 / prm.q)
        * powers
        / (b - a)
    )


def rhs_thm3(prm: FracParams) -> float:
    """Power-mean-route bound (E8proof). Requires M and q >= 1; p unused.

    At q = 1 the bound degenerates to rhs_thm1 exactly, so that case is
    delegated to keep the two formula paths literally identical.
    """
    _require(prm, "E8proof", M=prm.M, q=prm.q)
    if prm.q == 1.0:
        return rhs_thm1(prm)
    a, b, x, alpha, s = prm.a, prm.b, prm.x, prm.alpha, prm.s
    powers = (x - a) ** (alpha + 1.0) + (b - x) ** (alpha + 1.0)
    inv_q = 1.0 / prm.q
    return (
        prm.M
        * (1.0 / (1.0 + alpha)) ** (1.0 - inv_q)
        * (1.0 / (alpha + s + 1.0)) ** inv_q
        * (1.0 + _gamma_ratio(alpha, s)) ** inv_q
        * powers
        / (b - a)
    )


def _thm4_formula(f: Function1D, prm: FracParams) -> float:
    a, b, x, alpha, s = prm.a, prm.b, prm.x, prm.alpha, prm.s
    da = abs(float(f.deriv(0.5 * (x + a))))
    db = abs(float(f.deriv(0.5 * (b + x))))
    bracket = (x - a) ** (alpha + 1.0) * da + (b - x) ** (alpha + 1.0) * db
    return (
        2.0 ** ((s - 1.0) / prm.q)
        / ((1.0 + prm.p * alpha) ** (1.0 / prm.p) * (b - a))
        * bracket
    )


def rhs_thm4(
    f: Function1D,
    prm: FracParams,
    cert: Optional[ConvexityCertificate],
) -> float:
    """Midpoint-derivative bound (E9). Requires conjugate p, q and a PASS
    s-concavity certificate for |f'|**q at this (s, q); evaluating the bound
    without an established hypothesis is refused.
    """
    _require(prm, "E9", p=prm.p, q=prm.q)
    if cert is None:
        raise CertificateError(
            f"E9 for {f.name}: no s-concavity certificate supplied"
        )
    matches = (
        cert.mode == MODE_CONCAVE
        and cert.target == TARGET_FPRIME_POW
        and abs(cert.s - prm.s) <= 1e-12
        and abs(cert.q - prm.q) <= 1e-12
    )
    if not matches:
        raise CertificateError(
            f"E9 for {f.name}: certificate does not match "
            f"(need {MODE_CONCAVE} of |f'|^q at s={prm.s}, q={prm.q}; "
            f"got {cert.mode} of {cert.target} at s={cert.s}, q={cert.q})"
        )
    if not cert.passed:
        raise CertificateError(
            f"E9 for {f.name}: s-concavity certificate failed "
            f"(max violation {cert.max_violation:.3e})"
        )
    return _thm4_formula(f, prm)


def rhs_e8_printed(prm: FracParams) -> float:
    """Diagnostic twin of the circulated E8 statement.

    The statement in circulation textually duplicates the Hoelder-route
    bound (E7) and mentions p although its hypothesis only fixes q >= 1.
    This evaluator reproduces that printed formula (so sweeps can compare it
    against E8proof) but is never used as the official right-hand side.
    """
    _require(prm, "E8printed", M=prm.M, p=prm.p, q=prm.q)
    return rhs_thm2(prm)


# ---------------------------------------------------------------------------
# classical right-hand sides


def rhs_ostrowski(prm: FracParams) -> float:
    """Classical bound M(b-a)[1/4 + ((x - midpoint)/(b-a))**2] (e1)."""
    _require(prm, "e1", M=prm.M)
    a, b, x = prm.a, prm.b, prm.x
    shift = (x - 0.5 * (a + b)) / (b - a)
    return prm.M * (b - a) * (0.25 + shift * shift)


def rhs_alomari_msconvex(prm: FracParams) -> float:
    """M[(x-a)**2 + (b-x)**2] / ((b-a)(s+1)) (e14)."""
    _require(prm, "e14", M=prm.M)
    a, b, x, s = prm.a, prm.b, prm.x, prm.s
    return prm.M * ((x - a) ** 2 + (b - x) ** 2) / ((b - a) * (s + 1.0))


def rhs_alomari_hoelder(prm: FracParams) -> float:
    """Hoelder-structured classical bound used as the E7 reduction target.

    M/(1+p)**(1/p) * (2/(s+1))**(1/q) * [(x-a)**2+(b-x)**2]/(b-a); this is
    the form consistent with the Hoelder proof route (the circulated
    restatement of the corresponding classical theorem prints a different,
    inconsistent right-hand side, which we do not reproduce).
    """
    _require(prm, "hoelder", M=prm.M, p=prm.p, q=prm.q)
    a, b, x, s = prm.a, prm.b, prm.x, prm.s
    return (
        prm.M
        / (1.0 + prm.p) ** (1.0 / prm.p)
        * (2.0 / (s + 1.0)) ** (1.0 / prm.q)
        * ((x - a) ** 2 + (b - x) ** 2)
        / (b - a)
    )


def rhs_alomari_powermean(prm: FracParams) -> float:
    """M (2/(s+1))**(1/q) [(x-a)**2 + (b-x)**2] / (2(b-a)) (t5_146)."""
    _require(prm, "t5_146", M=prm.M, q=prm.q)
    a, b, x, s = prm.a, prm.b, prm.x, prm.s
    return (
        prm.M
        * (2.0 / (s + 1.0)) ** (1.0 / prm.q)
        * ((x - a) ** 2 + (b - x) ** 2)
        / (2.0 * (b - a))
    )


def rhs_alomari_sconcave(f: Function1D, prm: FracParams) -> float:
    """2**((s-1)/q)/((1+p)**(1/p)(b-a)) x weighted midpoint pair (t6_147)."""
    _require(prm, "t6_147", p=prm.p, q=prm.q)
    a, b, x, s = prm.a, prm.b, prm.x, prm.s
    da = abs(float(f.deriv(0.5 * (x + a))))
    db = abs(float(f.deriv(0.5 * (b + x))))
    bracket = (x - a) ** 2 * da + (b - x) ** 2 * db
    return 2.0 ** ((s - 1.0) / prm.q) / ((1.0 + prm.p) ** (1.0 / prm.p) * (b - a)) * bracket


# ---------------------------------------------------------------------------
# certificate plumbing and report assembly


def _resolve_m(entry: CatalogEntry, prm: FracParams) -> FracParams:
    if prm.M is not None:
        return prm
    return replace(prm, M=entry.deriv_bound().M)


class CertCache:
    """Memoizes certificates per (function, target, mode, s, q)."""

    def __init__(self, cert_tol: float = 1e-9, grid_size: int = 33):
        self.cert_tol = cert_tol
        self.grid_size = grid_size
        self._store: dict[tuple, ConvexityCertificate] = {}

    def get(
        self, entry: CatalogEntry, target: str, mode: str, s: float, q: float = 1.0
    ) -> ConvexityCertificate:
        key = (entry.name, target, mode, float(s), float(q))
        cert = self._store.get(key)
        if cert is None:
            cert = certify(
                entry.func,
                s=s,
                q=q,
                mode=mode,
                target=target,
                grid_size=self.grid_size,
                cert_tol=self.cert_tol,
            )
            self._store[key] = cert
        return cert


def _nonnegative_on_grid(f: Function1D, tol: float) -> bool:
    return float(np.min(np.asarray(f.eval(f.grid()), dtype=float))) >= -tol


def evaluate_theorem(
    theorem_id: str,
    entry: CatalogEntry,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    margin_tol: float = DEFAULT_MARGIN_TOL,
    certs: Optional[CertCache] = None,
    pieces: Optional[LemmaPieces] = None,
    mean: Optional[Estimate] = None,
) -> list[InequalityReport]:
    """Evaluate one theorem at one parameter point, certificate-gated.

    Returns one report, or two for the Hermite-Hadamard pair (e13), whose
    rows are tagged ``hh-lower`` and ``hh-upper`` in that order. Rows whose
    hypothesis certificate fails are still computed but carry
    asserted=False and an explanatory note. M is taken from prm when set,
    otherwise from the catalog entry's derivative bound.
    """
    if theorem_id not in THEOREM_IDS:
        raise ConfigError(f"unknown theorem id {theorem_id!r}; known: {THEOREM_IDS}")
    certs = certs if certs is not None else CertCache()
    f = entry.func
    prm = _resolve_m(entry, prm)
    name = entry.name

    if theorem_id in FRACTIONAL_IDS:
        left = lhs_frac(f, prm, cfg, pieces=pieces)

        if theorem_id == "E6":
            cert = certs.get(entry, TARGET_FPRIME, MODE_CONVEX, prm.s)
            rhs = rhs_thm1(prm)
        elif theorem_id == "E7":
            _require(prm, "E7", p=prm.p, q=prm.q)
            cert = certs.get(entry, TARGET_FPRIME_POW, MODE_CONVEX, prm.s, prm.q)
            rhs = rhs_thm2(prm)
        elif theorem_id == "E8proof":
            _require(prm, "E8proof", q=prm.q)
            cert = certs.get(entry, TARGET_FPRIME_POW, MODE_CONVEX, prm.s, prm.q)
            rhs = rhs_thm3(prm)
        else:  # E9
            _require(prm, "E9", p=prm.p, q=prm.q)
            cert = certs.get(entry, TARGET_FPRIME_POW, MODE_CONCAVE, prm.s, prm.q)
            rhs = rhs_thm4(f, prm, cert) if cert.passed else _thm4_formula(f, prm)

        note = "" if cert.passed else f"hypothesis not certified: {cert.describe()}"
        return [
            _make_report(
                theorem_id, name, prm, left.value, rhs, left.error,
                margin_tol, asserted=cert.passed, note=note,
            )
        ]

    if theorem_id == "e1":
        left = lhs_classical(f, prm, cfg, mean=mean)
        return [
            _make_report(
                "e1", name, prm, left.value, rhs_ostrowski(prm), left.error,
                margin_tol, asserted=True,
            )
        ]

    if theorem_id == "e13":
        cert = certs.get(entry, TARGET_F, MODE_CONVEX, prm.s)
        nonneg = _nonnegative_on_grid(f, certs.cert_tol)
        asserted = cert.passed and nonneg
        if not cert.passed:
            note = f"hypothesis not certified: {cert.describe()}"
        elif not nonneg:
            note = "hypothesis not certified: f takes negative values"
        else:
            note = ""
        if mean is None:
            mean = plain_integral(f, prm.a, prm.b, cfg)
        width = prm.b - prm.a
        mean_value = mean.value / width
        mean_err = mean.error / width
        mid_side = 2.0 ** (prm.s - 1.0) * float(f.eval(0.5 * (prm.a + prm.b)))
        end_side = (float(f.eval(prm.a)) + float(f.eval(prm.b))) / (prm.s + 1.0)
        lower = _make_report(
            "e13", name, prm, mid_side, mean_value, mean_err,
            margin_tol, asserted, note=(note + " " if note else "") + "hh-lower",
        )
        upper = _make_report(
            "e13", name, prm, mean_value, end_side, mean_err,
            margin_tol, asserted, note=(note + " " if note else "") + "hh-upper",
        )
        return [lower, upper]

    if theorem_id == "e14":
        cert = certs.get(entry, TARGET_FPRIME, MODE_CONVEX, prm.s)
        left = lhs_classical(f, prm, cfg, mean=mean)
        note = "" if cert.passed else f"hypothesis not certified: {cert.describe()}"
        return [
            _make_report(
                "e14", name, prm, left.value, rhs_alomari_msconvex(prm), left.error,
                margin_tol, asserted=cert.passed, note=note,
            )
        ]

    if theorem_id == "t5_146":
        _require(prm, "t5_146", q=prm.q)
        cert = certs.get(entry, TARGET_FPRIME_POW, MODE_CONVEX, prm.s, prm.q)
        left = lhs_classical(f, prm, cfg, mean=mean)
        note = "" if cert.passed else f"hypothesis not certified: {cert.describe()}"
        return [
            _make_report(
                "t5_146", name, prm, left.value, rhs_alomari_powermean(prm), left.error,
                margin_tol, asserted=cert.passed, note=note,
            )
        ]

    # t6_147
    _require(prm, "t6_147", p=prm.p, q=prm.q)
    cert = certs.get(entry, TARGET_FPRIME_POW, MODE_CONCAVE, prm.s, prm.q)
    left = lhs_classical(f, prm, cfg, mean=mean)
    note = "" if cert.passed else f"hypothesis not certified: {cert.describe()}"
    return [
        _make_report(
            "t6_147", name, prm, left.value, rhs_alomari_sconcave(f, prm), left.error,
            margin_tol, asserted=cert.passed, note=note,
        )
    ]


def classical_suite(
    entry: CatalogEntry,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    margin_tol: float = DEFAULT_MARGIN_TOL,
    certs: Optional[CertCache] = None,
) -> list[InequalityReport]:
    """All classical rows (e1, e13 pair, e14, t5_146, t6_147) at one point.

    prm must carry M (or the entry an analytic bound) plus p and q for the
    exponent-based members.
    """
    certs = certs if certs is not None else CertCache()
    mean = plain_integral(entry.func, prm.a, prm.b, cfg)
    out: list[InequalityReport] = []
    for tid in CLASSICAL_IDS:
        out.extend(
            evaluate_theorem(
                tid, entry, prm, cfg,
                margin_tol=margin_tol, certs=certs, mean=mean,
            )
        )
    return out


# ---------------------------------------------------------------------------
# alpha = 1 reduction checks


_DEFAULT_S_GRID = (0.25, 0.5, 0.75, 1.0)
_DEFAULT_PQ_GRID = ((2.0, 2.0), (3.0, 1.5), (1.25, 5.0))
_DEFAULT_Q_GRID = (1.0, 1.5, 2.0, 3.0, 5.0)


def reduction_check(
    theorem_id: str,
    interval: tuple[float, float] = (0.0, 1.0),
    M: float = 2.0,
    s_values: tuple[float, ...] = _DEFAULT_S_GRID,
    x_count: int = 11,
    pq_pairs: tuple[tuple[float, float], ...] = _DEFAULT_PQ_GRID,
    q_values: tuple[float, ...] = _DEFAULT_Q_GRID,
    f: Optional[Function1D] = None,
) -> float:
    """Maximum |fractional RHS at alpha=1 - classical RHS| over a grid.

    Pure closed-form arithmetic with no quadrature; the two formulas must
    coincide to REDUCTION_TOL. E6 reduces to e14, E7 to the
    Hoelder-structured classical form, E8proof to t5_146, and E9 to t6_147
    (E9 compares the bracket formulas directly, so any f with an exact
    derivative works; the default is the catalog's (2/3) t**1.5 entry).
    """
    a, b = interval
    xs = np.linspace(a, b, x_count)
    worst = 0.0

    if theorem_id == "E6":
        for s in s_values:
            for x in xs:
                prm = FracParams(a, b, float(x), 1.0, s=s, M=M)
                worst = max(worst, abs(rhs_thm1(prm) - rhs_alomari_msconvex(prm)))
        return worst

    if theorem_id == "E7":
        for s in s_values:
            for p, q in pq_pairs:
                for x in xs:
                    prm = FracParams(a, b, float(x), 1.0, s=s, p=p, q=q, M=M)
                    worst = max(worst, abs(rhs_thm2(prm) - rhs_alomari_hoelder(prm)))
        return worst

    if theorem_id == "E8proof":
        for s in s_values:
            for q in q_values:
                for x in xs:
                    prm = FracParams(a, b, float(x), 1.0, s=s, q=q, M=M)
                    worst = max(worst, abs(rhs_thm3(prm) - rhs_alomari_powermean(prm)))
        return worst

    if theorem_id == "E9":
        if f is None:
            from .funcatalog import get_entry

            f = get_entry("threehalf").func
        for s in s_values:
            for p, q in pq_pairs:
                for x in xs:
                    prm = FracParams(a, b, float(x), 1.0, s=s, p=p, q=q)
                    worst = max(
                        worst, abs(_thm4_formula(f, prm) - rhs_alomari_sconcave(f, prm))
                    )
        return worst

    raise ConfigError(
        f"reduction_check knows {FRACTIONAL_IDS}, got {theorem_id!r}"
    )
