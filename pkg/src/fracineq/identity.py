"""Numerical verification of the package's central integral identity.

The identity under test equates a pointwise/operator combination with a pair
of weighted derivative averages: with Jm, Jp the operator pair from
:func:`fracineq.fracint.lemma_pair`,

    ((x-a)**alpha + (b-x)**alpha) / (b-a) * f(x)
        - Gamma(alpha+1)/(b-a) * (Jm + Jp)
    =   ((x-a)**(alpha+1) / (b-a)) * integral_0^1 t**alpha f'(t x + (1-t) a) dt
      - ((b-x)**(alpha+1) / (b-a)) * integral_0^1 t**alpha f'(t x + (1-t) b) dt.

``check_e1`` verifies the full identity, ``check_e4_e5`` its two one-sided
halves (each equating one weighted derivative average with one operator
term), and ``check_classical_lemma`` the alpha = 1 degeneration

    f(x) - (1/(b-a)) integral_a^b f
    = ((x-a)**2/(b-a)) integral_0^1 t f'(tx+(1-t)a) dt
      - ((b-x)**2/(b-a)) integral_0^1 t f'(tx+(1-t)b) dt

through an independent plain-quadrature route.

Every check reports a residual relative to max(1, |lhs|, |rhs|) so that
near-zero cases (constant f makes both sides exactly 0) keep a meaningful
PASS threshold, together with the propagated quadrature error budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, FracIneqError
from .fracint import (
    DEFAULT_QUADRATURE,
    Estimate,
    FracParams,
    QuadratureConfig,
    lemma_pair,
    moment_integral,
    plain_integral,
)
from .funcatalog import Function1D
from .specfun import gamma

__all__ = [
    "DEFAULT_IDENTITY_TOL",
    "ALPHA_ONE_MATCH_TOL",
    "IdentityResidual",
    "LemmaPieces",
    "compute_pieces",
    "check_e1",
    "check_e4_e5",
    "check_classical_lemma",
]

#: Default PASS threshold for relative residuals.
DEFAULT_IDENTITY_TOL = 1e-8

#: Agreement required between the alpha = 1 identity and its classical twin.
ALPHA_ONE_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class IdentityResidual:
    """Both sides of one identity instance and their discrepancy."""

    lhs: float
    rhs: float
    residual: float  # lhs - rhs
    scale: float  # max(1, |lhs|, |rhs|)
    rel_residual: float  # |residual| / scale
    quad_error_budget: float  # propagated quadrature error / scale

    @classmethod
    def from_sides(cls, lhs: float, rhs: float, abs_error: float) -> "IdentityResidual":
        scale = max(1.0, abs(lhs), abs(rhs))
        residual = lhs - rhs
        return cls(
            lhs=float(lhs),
            rhs=float(rhs),
            residual=float(residual),
            scale=float(scale),
            rel_residual=abs(residual) / scale,
            quad_error_budget=float(abs_error) / scale,
        )

    def passes(self, identity_tol: float = DEFAULT_IDENTITY_TOL) -> bool:
        """PASS iff rel_residual <= max(identity_tol, 10 * quad_error_budget)."""
        return self.rel_residual <= max(identity_tol, 10.0 * self.quad_error_budget)


@dataclass(frozen=True)
class LemmaPieces:
    """Shared quadrature results for one (f, a, b, x, alpha) instance.

    Computing these once lets the full identity, its two halves, and the
    inequality left-hand side all reuse the same four integrals.
    """

    a: float
    b: float
    x: float
    alpha: float
    fx: float
    jm: Estimate  # operator term anchored toward a
    jp: Estimate  # operator term anchored toward b
    ia: Estimate  # moment integral of f' toward a
    ib: Estimate  # moment integral of f' toward b


def compute_pieces(
    f: Function1D,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> LemmaPieces:
    """Evaluate the four quadratures the identity and bounds share."""
    jm, jp = lemma_pair(f, prm, cfg)
    ia = moment_integral(f.deriv, prm.x, prm.a, prm.alpha, cfg)
    ib = moment_integral(f.deriv, prm.x, prm.b, prm.alpha, cfg)
    return LemmaPieces(
        a=prm.a,
        b=prm.b,
        x=prm.x,
        alpha=prm.alpha,
        fx=float(f.eval(prm.x)),
        jm=jm,
        jp=jp,
        ia=ia,
        ib=ib,
    )


def _coefficients(p: LemmaPieces) -> tuple[float, float, float, float, float]:
    width = p.b - p.a
    ga1 = gamma(p.alpha + 1.0)
    wa = (p.x - p.a) ** p.alpha
    wb = (p.b - p.x) ** p.alpha
    ka = (p.x - p.a) ** (p.alpha + 1.0) / width
    kb = (p.b - p.x) ** (p.alpha + 1.0) / width
    return ga1, wa, wb, ka, kb


def check_e1_from_pieces(p: LemmaPieces) -> IdentityResidual:
    ga1, wa, wb, ka, kb = _coefficients(p)
    width = p.b - p.a
    lhs = (wa + wb) / width * p.fx - ga1 / width * (p.jm.value + p.jp.value)
    rhs = ka * p.ia.value - kb * p.ib.value
    budget = (
        ga1 / width * (p.jm.error + p.jp.error)
        + ka * p.ia.error
        + kb * p.ib.error
    )
    return IdentityResidual.from_sides(lhs, rhs, budget)


def check_e4_from_pieces(p: LemmaPieces) -> IdentityResidual:
    ga1, wa, _, ka, _ = _coefficients(p)
    width = p.b - p.a
    lhs = wa * p.fx / width - ga1 / width * p.jm.value
    rhs = ka * p.ia.value
    budget = ka * p.ia.error + ga1 / width * p.jm.error
    return IdentityResidual.from_sides(lhs, rhs, budget)


def check_e5_from_pieces(p: LemmaPieces) -> IdentityResidual:
    ga1, _, wb, _, kb = _coefficients(p)
    width = p.b - p.a
    lhs = -wb * p.fx / width + ga1 / width * p.jp.value
    rhs = kb * p.ib.value
    budget = kb * p.ib.error + ga1 / width * p.jp.error
    return IdentityResidual.from_sides(lhs, rhs, budget)


def check_e1(
    f: Function1D,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> IdentityResidual:
    """Verify the full identity at one parameter point (endpoints allowed)."""
    return check_e1_from_pieces(compute_pieces(f, prm, cfg))


def check_e4_e5(
    f: Function1D,
    prm: FracParams,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> tuple[IdentityResidual, IdentityResidual]:
    """Verify the two one-sided halves separately; requires a < x < b.

    Each half keeps the operator expression on the left and its
    moment-integral representation on the right, the same orientation as
    the full identity. With residuals r = lhs - rhs, the full residual
    decomposes as r1 = r4 - r5 up to floating-point regrouping of the
    shared quadrature values.
    """
    if not (prm.a < prm.x < prm.b):
        raise DomainError(
            f"one-sided checks require a < x < b, got a={prm.a!r}, "
            f"x={prm.x!r}, b={prm.b!r}"
        )
    pieces = compute_pieces(f, prm, cfg)
    return check_e4_from_pieces(pieces), check_e5_from_pieces(pieces)


def check_classical_lemma(
    f: Function1D,
    a: float,
    b: float,
    x: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> IdentityResidual:
    """Verify the classical (alpha = 1) identity through plain integrals.

    The integral mean is computed from ordinary quadrature split at x, an
    independent route from the weighted-operator machinery. The result is
    then cross-asserted against check_e1 at alpha = 1: both sides must
    coincide to ALPHA_ONE_MATCH_TOL (relative to the residual scale), and a
    disagreement raises rather than returning silently inconsistent data.
    """
    prm = FracParams(a=a, b=b, x=x, alpha=1.0)
    width = b - a
    fx = float(f.eval(x))
    il = plain_integral(f, a, x, cfg)
    ir = plain_integral(f, x, b, cfg)
    i_toward_a = moment_integral(f.deriv, x, a, 1.0, cfg)
    i_toward_b = moment_integral(f.deriv, x, b, 1.0, cfg)

    lhs = fx - (il.value + ir.value) / width
    rhs = (x - a) ** 2 / width * i_toward_a.value - (b - x) ** 2 / width * i_toward_b.value
    budget = (
        (il.error + ir.error) / width
        + (x - a) ** 2 / width * i_toward_a.error
        + (b - x) ** 2 / width * i_toward_b.error
    )
    res = IdentityResidual.from_sides(lhs, rhs, budget)

    twin = check_e1(f, prm, cfg)
    tol = ALPHA_ONE_MATCH_TOL * max(res.scale, twin.scale)
    if abs(res.lhs - twin.lhs) > tol or abs(res.rhs - twin.rhs) > tol:
        raise FracIneqError(
            f"classical identity disagrees with the alpha=1 specialization "
            f"for {f.name} at x={x!r}: lhs {res.lhs!r} vs {twin.lhs!r}, "
            f"rhs {res.rhs!r} vs {twin.rhs!r}"
        )
    return res
