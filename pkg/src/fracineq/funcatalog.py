"""Differentiable test functions plus sampled hypothesis certification.

The catalog supplies the subjects every inequality is evaluated on: each
entry carries an exact closed-form derivative (numerical differentiation
would contaminate identity residuals), the s values under which its
hypothesis certificates are known to pass, and an analytic derivative bound
where one is available.

Certification is deliberately not symbolic. ``certify`` samples the defining
inequality of s-convexity (second sense),

    g(lam*u + (1-lam)*v) <= lam**s * g(u) + (1-lam)**s * g(v),

on a dense (u, v, lam) grid and records the worst violation; s-concavity is
the reversed inequality. A certificate is a statement about a finite grid,
which is exactly the strength needed to gate empirical inequality checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import CertificateError, ConfigError, DomainError

__all__ = [
    "MODE_CONVEX",
    "MODE_CONCAVE",
    "TARGET_F",
    "TARGET_FPRIME",
    "TARGET_FPRIME_POW",
    "Function1D",
    "ConvexityCertificate",
    "DerivBound",
    "CatalogEntry",
    "certify",
    "derivative_bound",
    "builtin_catalog",
    "get_entry",
    "catalog_names",
]

MODE_CONVEX = "s-convex"
MODE_CONCAVE = "s-concave"

TARGET_F = "f"
TARGET_FPRIME = "|f'|"
TARGET_FPRIME_POW = "|f'|^q"

_MODES = (MODE_CONVEX, MODE_CONCAVE)
_TARGETS = (TARGET_F, TARGET_FPRIME, TARGET_FPRIME_POW)

#: Default PASS threshold for a certificate's worst grid violation.
DEFAULT_CERT_TOL = 1e-9

#: Minimum grid resolution per sampled axis (u, v, lam).
MIN_GRID_SIZE = 33


@dataclass(frozen=True)
class Function1D:
    """A scalar function on an interval with exact value and derivative.

    ``eval`` and ``deriv`` must accept floats and numpy arrays alike and
    ``deriv`` must be the exact analytic derivative of ``eval``; use
    :meth:`self_check` to verify a hand-written pair. Negative domains are
    accepted here (identity checks are domain-agnostic); convexity
    certification separately insists on [0, inf).
    """

    name: str
    eval: Callable[..., np.ndarray]
    deriv: Callable[..., np.ndarray]
    domain_lo: float
    domain_hi: float

    def __post_init__(self) -> None:
        if not self.domain_lo < self.domain_hi:
            raise DomainError(
                f"{self.name}: domain_lo < domain_hi required, got "
                f"[{self.domain_lo}, {self.domain_hi}]"
            )

    def __call__(self, t):
        return self.eval(t)

    def grid(self, n: int = 1001) -> np.ndarray:
        return np.linspace(self.domain_lo, self.domain_hi, n)

    def self_check(self, n: int = 200, seed: int = 0, h: float = 1e-6) -> None:
        """Verify deriv against a centered finite difference of eval.

        Samples n random interior points; raises CertificateError when the
        finite difference drifts beyond 1e-6 * (1 + |deriv|) anywhere, or
        when either evaluator produces a non-finite value on a 1001-point
        grid over the closed domain.
        """
        rng = np.random.default_rng(seed)
        pts = rng.uniform(self.domain_lo + h, self.domain_hi - h, size=n)
        fd = (np.asarray(self.eval(pts + h)) - np.asarray(self.eval(pts - h))) / (2.0 * h)
        dv = np.asarray(self.deriv(pts))
        gap = np.abs(fd - dv) - 1e-6 * (1.0 + np.abs(dv))
        if np.max(gap) > 0.0:
            k = int(np.argmax(gap))
            raise CertificateError(
                f"{self.name}: deriv disagrees with finite difference at "
                f"t={pts[k]!r} (fd={fd[k]!r}, deriv={dv[k]!r})"
            )
        g = self.grid()
        if not (np.all(np.isfinite(self.eval(g))) and np.all(np.isfinite(self.deriv(g)))):
            raise CertificateError(f"{self.name}: non-finite value on the domain grid")


@dataclass(frozen=True)
class ConvexityCertificate:
    """Outcome of sampling one convexity-type hypothesis on a grid."""

    s: float
    mode: str
    target: str
    q: float
    max_violation: float
    grid_size: int
    cert_tol: float = DEFAULT_CERT_TOL

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.cert_tol

    def describe(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        tgt = self.target if self.target != TARGET_FPRIME_POW else f"|f'|^{self.q:g}"
        return (
            f"{verdict} {self.mode} s={self.s:g} target {tgt} "
            f"(max violation {self.max_violation:.3e}, grid {self.grid_size}^3)"
        )


@dataclass(frozen=True)
class DerivBound:
    """A certified bound M on |f'| over the domain."""

    M: float
    method: str  # "analytic" or "sampled"


def _target_callable(f: Function1D, target: str, q: float):
    if target == TARGET_F:
        return lambda t: np.asarray(f.eval(t), dtype=float)
    if target == TARGET_FPRIME:
        return lambda t: np.abs(np.asarray(f.deriv(t), dtype=float))
    if target == TARGET_FPRIME_POW:
        return lambda t: np.abs(np.asarray(f.deriv(t), dtype=float)) ** q
    raise ConfigError(f"unknown certification target {target!r}")


def certify(
    f: Function1D,
    s: float,
    q: float = 1.0,
    mode: str = MODE_CONVEX,
    target: str = TARGET_FPRIME,
    grid_size: int = MIN_GRID_SIZE,
    cert_tol: float = DEFAULT_CERT_TOL,
) -> ConvexityCertificate:
    """Sample an s-convexity or s-concavity hypothesis on a dense grid.

    Evaluates the target function g (f itself, |f'|, or |f'|**q) at every
    triple (u, v, lam) of three uniform grids over [domain_lo, domain_hi]**2
    x [0, 1] and records the worst signed violation of the defining
    inequality. The certificate PASSes when that maximum is <= cert_tol.

    The definition of s-convexity lives on [0, inf), so functions whose
    domain dips below zero are rejected.
    """
    if not (0.0 < s <= 1.0):
        raise DomainError(f"s must lie in (0, 1], got {s!r}")
    if q < 1.0:
        raise DomainError(f"q must be >= 1, got {q!r}")
    if mode not in _MODES:
        raise ConfigError(f"mode must be one of {_MODES}, got {mode!r}")
    if target not in _TARGETS:
        raise ConfigError(f"target must be one of {_TARGETS}, got {target!r}")
    if grid_size < MIN_GRID_SIZE:
        raise ConfigError(f"grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}")
    if f.domain_lo < 0.0:
        raise DomainError(
            f"{f.name}: certification requires a domain inside [0, inf), "
            f"got domain_lo={f.domain_lo}"
        )

    g = _target_callable(f, target, q)
    u = np.linspace(f.domain_lo, f.domain_hi, grid_size)
    lam = np.linspace(0.0, 1.0, grid_size)

    gu = g(u)  # shared for both axes; u and v ranges coincide
    lam_s = lam**s
    lam_s_c = (1.0 - lam) ** s

    # broadcast (lam, u, v): points lam*u + (1-lam)*v and the defining bound
    pts = lam[:, None, None] * u[None, :, None] + (1.0 - lam)[:, None, None] * u[None, None, :]
    bound = lam_s[:, None, None] * gu[None, :, None] + lam_s_c[:, None, None] * gu[None, None, :]
    violation = g(pts) - bound
    if mode == MODE_CONCAVE:
        violation = -violation

    return ConvexityCertificate(
        s=float(s),
        mode=mode,
        target=target,
        q=float(q),
        max_violation=float(np.max(violation)),
        grid_size=int(grid_size),
        cert_tol=float(cert_tol),
    )


def derivative_bound(
    f: Function1D,
    analytic: Optional[float] = None,
    grid_points: int = 1001,
) -> DerivBound:
    """Bound |f'| over the domain.

    With an analytic value the grid merely cross-checks it (a claimed bound
    the sampled supremum exceeds is refuted and raises). Without one, the
    sampled supremum is inflated by a relative 1e-9 so that downstream
    inequality hypotheses are satisfied honestly rather than marginally.
    """
    if grid_points < 2:
        raise ConfigError(f"grid_points must be >= 2, got {grid_points}")
    sup = float(np.max(np.abs(np.asarray(f.deriv(f.grid(grid_points)), dtype=float))))
    if analytic is not None:
        if analytic < 0.0:
            raise DomainError(f"analytic bound must be nonnegative, got {analytic!r}")
        if sup > analytic + 1e-12:
            raise CertificateError(
                f"{f.name}: claimed derivative bound {analytic!r} refuted by "
                f"sampled supremum {sup!r}"
            )
        return DerivBound(M=float(analytic), method="analytic")
    return DerivBound(M=(1.0 + 1e-9) * sup, method="sampled")


@dataclass(frozen=True)
class CatalogEntry:
    """A catalog function with its registered hypothesis data.

    s_convex lists the s values for which |f'| certifies s-convex.
    s_concave lists the s values for which |f'|**q certifies s-concave at
    the registration convention q = 2 (the sweep re-certifies at whatever
    (s, q) it actually uses). analytic_m, when present, is an exact bound
    on |f'| over the domain.
    """

    func: Function1D
    s_convex: tuple[float, ...]
    s_concave: tuple[float, ...]
    analytic_m: Optional[float]
    summary: str

    @property
    def name(self) -> str:
        return self.func.name

    @property
    def registered_s(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.s_convex) | set(self.s_concave)))

    def deriv_bound(self) -> DerivBound:
        return derivative_bound(self.func, analytic=self.analytic_m)


def _arr(t):
    return np.asarray(t, dtype=float)


_ALL_S = (0.25, 0.5, 0.75, 1.0)


def _build_catalog() -> tuple[CatalogEntry, ...]:
    one = lambda t: np.ones_like(_arr(t))
    zero = lambda t: np.zeros_like(_arr(t))
    ident = lambda t: _arr(t)

    entries = (
        CatalogEntry(
            Function1D("constant", one, zero, 0.0, 1.0),
            s_convex=_ALL_S,
            s_concave=_ALL_S,
            analytic_m=0.0,
            summary="f(t) = 1",
        ),
        CatalogEntry(
            Function1D("affine", ident, one, 0.0, 1.0),
            s_convex=_ALL_S,
            s_concave=(1.0,),
            analytic_m=1.0,
            summary="f(t) = t",
        ),
        CatalogEntry(
            Function1D(
                "affine_shift",
                lambda t: 0.5 + 2.0 * _arr(t),
                lambda t: np.full_like(_arr(t), 2.0),
                0.0,
                1.0,
            ),
            s_convex=_ALL_S,
            s_concave=(1.0,),
            analytic_m=2.0,
            summary="f(t) = 0.5 + 2t",
        ),
        CatalogEntry(
            Function1D("square", lambda t: _arr(t) ** 2, lambda t: 2.0 * _arr(t), 0.0, 1.0),
            s_convex=_ALL_S,
            s_concave=(),
            analytic_m=2.0,
            summary="f(t) = t^2",
        ),
        CatalogEntry(
            Function1D(
                "pow125",
                lambda t: _arr(t) ** 1.25,
                lambda t: 1.25 * _arr(t) ** 0.25,
                0.0,
                1.0,
            ),
            s_convex=(0.25,),
            s_concave=(1.0,),
            analytic_m=1.25,
            summary="f(t) = t^1.25",
        ),
        CatalogEntry(
            Function1D(
                "pow150",
                lambda t: _arr(t) ** 1.5,
                lambda t: 1.5 * np.sqrt(_arr(t)),
                0.0,
                1.0,
            ),
            s_convex=(0.25, 0.5),
            s_concave=(1.0,),
            analytic_m=1.5,
            summary="f(t) = t^1.5",
        ),
        CatalogEntry(
            Function1D(
                "pow175",
                lambda t: _arr(t) ** 1.75,
                lambda t: 1.75 * _arr(t) ** 0.75,
                0.0,
                1.0,
            ),
            s_convex=(0.25, 0.5, 0.75),
            s_concave=(),
            analytic_m=1.75,
            summary="f(t) = t^1.75",
        ),
        CatalogEntry(
            Function1D(
                "threehalf",
                lambda t: (2.0 / 3.0) * _arr(t) ** 1.5,
                lambda t: np.sqrt(_arr(t)),
                0.0,
                1.0,
            ),
            s_convex=(0.25, 0.5),
            s_concave=(1.0,),
            analytic_m=1.0,
            summary="f(t) = (2/3) t^1.5",
        ),
        CatalogEntry(
            Function1D("exp", lambda t: np.exp(_arr(t)), lambda t: np.exp(_arr(t)), 0.0, 1.0),
            s_convex=_ALL_S,
            s_concave=(),
            analytic_m=math.e,
            summary="f(t) = exp(t)",
        ),
    )
    return entries


_CATALOG = _build_catalog()


def builtin_catalog() -> list[CatalogEntry]:
    """All built-in catalog entries, in their stable listing order."""
    return list(_CATALOG)


def catalog_names() -> list[str]:
    return [e.name for e in _CATALOG]


def get_entry(name: str) -> CatalogEntry:
    for e in _CATALOG:
        if e.name == name:
            return e
    raise ConfigError(f"unknown catalog function {name!r}; known: {', '.join(catalog_names())}")
