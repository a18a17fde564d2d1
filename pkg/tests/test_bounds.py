"""Closed-form bound evaluators, certificate gating, and alpha=1 reductions."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import beta as scipy_beta

from fracineq.bounds import (
    CLASSICAL_IDS,
    FRACTIONAL_IDS,
    REDUCTION_TOL,
    THEOREM_IDS,
    CertCache,
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
from fracineq.errors import CertificateError, ConfigError
from fracineq.fracint import Estimate, FracParams
from fracineq.funcatalog import (
    MODE_CONCAVE,
    MODE_CONVEX,
    TARGET_FPRIME,
    TARGET_FPRIME_POW,
    CatalogEntry,
    Function1D,
    certify,
    get_entry,
)

S_GRID = (0.25, 0.5, 0.75, 1.0)
PQ_PAIRS = ((2.0, 2.0), (3.0, 1.5), (1.25, 5.0))
X_GRID = (0.0, 0.1, 0.35, 0.5, 0.8, 1.0)


def gamma_ratio(alpha: float, s: float) -> float:
    return math.gamma(alpha + 1.0) * math.gamma(s + 1.0) / math.gamma(alpha + s + 1.0)


class TestTheoremIds:
    def test_vocabulary(self):
        assert FRACTIONAL_IDS == ("E6", "E7", "E8proof", "E9")
        assert CLASSICAL_IDS == ("e1", "e13", "e14", "t5_146", "t6_147")
        assert THEOREM_IDS == FRACTIONAL_IDS + CLASSICAL_IDS


class TestLhsFrac:
    def test_constant_vanishes(self):
        est = lhs_frac(get_entry("constant").func, FracParams(0.0, 1.0, 0.3, 0.75))
        assert est.value <= 1e-13
        assert est.error >= 0.0

    def test_square_classical_twelfth(self):
        # alpha=1 midpoint: |f(x) - mean| = |1/4 - 1/3| = 1/12
        est = lhs_frac(get_entry("square").func, FracParams(0.0, 1.0, 0.5, 1.0))
        assert est.value == pytest.approx(1.0 / 12.0, abs=1e-10)

    @pytest.mark.parametrize("x", [0.25, 0.5])
    def test_affine_matches_closed_form(self, x):
        # J-pair for f(t)=t on (0,1) in closed form, assembled independently
        g = math.gamma
        jm = x ** 1.5 / (1.5 * g(0.5))
        jp = (2.0 * math.sqrt(1.0 - x) - (2.0 / 3.0) * (1.0 - x) ** 1.5) / g(0.5)
        expr = (x ** 0.5 + (1.0 - x) ** 0.5) * x - g(1.5) * (jm + jp)
        est = lhs_frac(get_entry("affine").func, FracParams(0.0, 1.0, x, 0.5))
        assert est.value == pytest.approx(abs(expr), abs=1e-9)


class TestLhsClassical:
    def test_square_midpoint(self):
        est = lhs_classical(get_entry("square").func, FracParams(0.0, 1.0, 0.5, 1.0))
        assert est.value == pytest.approx(1.0 / 12.0, abs=1e-12)

    def test_affine_at_endpoint(self):
        est = lhs_classical(get_entry("affine").func, FracParams(0.0, 1.0, 0.0, 1.0))
        assert est.value == pytest.approx(0.5, abs=1e-12)

    def test_precomputed_mean_is_used(self):
        f = get_entry("square").func
        est = lhs_classical(f, FracParams(0.0, 1.0, 0.5, 1.0), mean=Estimate(1.0 / 3.0, 0.0))
        assert est.value == abs(0.25 - 1.0 / 3.0)
        assert est.error == 0.0


class TestRhsThm1:
    def test_hand_value_alpha_one(self):
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, M=2.0)
        assert rhs_thm1(prm) == pytest.approx(0.5, rel=1e-14)

    def test_endpoint_hand_value(self):
        # x=a, alpha=s=0.5, M=1: (1 + pi/4) / 2
        prm = FracParams(0.0, 1.0, 0.0, 0.5, s=0.5, M=1.0)
        assert rhs_thm1(prm) == pytest.approx((1.0 + math.pi / 4.0) / 2.0, rel=1e-13)

    def test_frozen_regression_point(self):
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, M=2.0)
        assert rhs_thm1(prm) == pytest.approx(1.2624671484563437, rel=1e-13)

    @pytest.mark.parametrize("s", S_GRID)
    @pytest.mark.parametrize("x", X_GRID)
    def test_alpha_one_equals_classical(self, s, x):
        prm = FracParams(0.0, 1.0, x, 1.0, s=s, M=2.0)
        assert abs(rhs_thm1(prm) - rhs_alomari_msconvex(prm)) <= 1e-12

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.5))
    @pytest.mark.parametrize("s", S_GRID)
    def test_gamma_ratio_against_beta(self, alpha, s):
        # 1 + ratio == 1 + (alpha+s+1) * B(alpha+1, s+1), B independent
        prm = FracParams(0.0, 1.0, 0.4, alpha, s=s, M=1.5)
        via_beta = (
            prm.M
            * (1.0 + (alpha + s + 1.0) * float(scipy_beta(alpha + 1.0, s + 1.0)))
            * ((0.4) ** (alpha + 1.0) + (0.6) ** (alpha + 1.0))
            / (alpha + s + 1.0)
        )
        assert rhs_thm1(prm) == pytest.approx(via_beta, rel=1e-12)

    def test_missing_m_rejected(self):
        with pytest.raises(ConfigError):
            rhs_thm1(FracParams(0.0, 1.0, 0.5, 0.5, s=0.5))


class TestRhsThm2:
    def test_hand_value_alpha_one(self):
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, p=2.0, q=2.0, M=2.0)
        assert rhs_thm2(prm) == pytest.approx(2.0 / math.sqrt(3.0) * 0.5, rel=1e-14)

    def test_endpoint_keeps_single_term(self):
        prm_a = FracParams(0.0, 1.0, 0.0, 0.75, s=0.5, p=2.0, q=2.0, M=1.0)
        expected = 1.0 / math.sqrt(1.0 + 2.0 * 0.75) * math.sqrt(2.0 / 1.5) * 1.0
        assert rhs_thm2(prm_a) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("s", S_GRID)
    @pytest.mark.parametrize("pq", PQ_PAIRS)
    def test_alpha_one_equals_hoelder_form(self, s, pq):
        p, q = pq
        for x in X_GRID:
            prm = FracParams(0.0, 1.0, x, 1.0, s=s, p=p, q=q, M=2.0)
            assert abs(rhs_thm2(prm) - rhs_alomari_hoelder(prm)) <= 1e-12

    def test_missing_exponents_rejected(self):
        with pytest.raises(ConfigError):
            rhs_thm2(FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, M=2.0))


class TestRhsThm3:
    def test_q_one_degenerates_to_thm1_exactly(self):
        prm = FracParams(0.0, 1.0, 0.3, 0.75, s=0.5, q=1.0, M=2.0)
        assert rhs_thm3(prm) == rhs_thm1(prm)

    def test_hand_value_alpha_one(self):
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, q=2.0, M=2.0)
        assert rhs_thm3(prm) == pytest.approx(0.5, rel=1e-14)

    @pytest.mark.parametrize("s", S_GRID)
    @pytest.mark.parametrize("q", (1.0, 1.5, 2.0, 3.0))
    def test_alpha_one_equals_powermean_form(self, s, q):
        for x in X_GRID:
            prm = FracParams(0.0, 1.0, x, 1.0, s=s, q=q, M=2.0)
            assert abs(rhs_thm3(prm) - rhs_alomari_powermean(prm)) <= 1e-12

    def test_missing_q_rejected(self):
        with pytest.raises(ConfigError):
            rhs_thm3(FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, M=2.0))


class TestRhsThm4:
    def threehalf_cert(self, s=1.0, q=2.0):
        return certify(
            get_entry("threehalf").func,
            s=s,
            q=q,
            mode=MODE_CONCAVE,
            target=TARGET_FPRIME_POW,
        )

    def test_hand_value_alpha_one(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, p=2.0, q=2.0)
        expected = 0.25 * (0.5 + math.sqrt(0.75)) / math.sqrt(3.0)
        assert rhs_thm4(f, prm, self.threehalf_cert()) == pytest.approx(
            expected, rel=1e-13
        )

    def test_frozen_regression_point(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=1.0, p=2.0, q=2.0)
        assert rhs_thm4(f, prm, self.threehalf_cert()) == pytest.approx(
            0.3415063509461097, rel=1e-13
        )

    def test_endpoint_keeps_single_term(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.0, 1.0, s=1.0, p=2.0, q=2.0)
        expected = abs(float(f.deriv(0.5))) / math.sqrt(3.0)
        assert rhs_thm4(f, prm, self.threehalf_cert()) == pytest.approx(
            expected, rel=1e-13
        )

    @pytest.mark.parametrize("pq", PQ_PAIRS)
    def test_alpha_one_equals_classical(self, pq):
        p, q = pq
        f = get_entry("threehalf").func
        cert = self.threehalf_cert(s=1.0, q=q)
        for x in (0.2, 0.5, 0.9):
            prm = FracParams(0.0, 1.0, x, 1.0, s=1.0, p=p, q=q)
            if not cert.passed:
                continue
            assert abs(rhs_thm4(f, prm, cert) - rhs_alomari_sconcave(f, prm)) <= 1e-12

    def test_missing_certificate_refused(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=1.0, p=2.0, q=2.0)
        with pytest.raises(CertificateError, match="no s-concavity certificate"):
            rhs_thm4(f, prm, None)

    def test_mismatched_certificate_refused(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, p=2.0, q=2.0)
        with pytest.raises(CertificateError, match="does not match"):
            rhs_thm4(f, prm, self.threehalf_cert(s=1.0, q=2.0))

    def test_wrong_target_certificate_refused(self):
        f = get_entry("threehalf").func
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, p=2.0, q=2.0)
        convex_cert = certify(
            f, s=0.5, q=2.0, mode=MODE_CONVEX, target=TARGET_FPRIME
        )
        with pytest.raises(CertificateError, match="does not match"):
            rhs_thm4(f, prm, convex_cert)

    def test_failed_certificate_refused(self):
        # |f'|^2 of t^2 is 4t^2, convex, so the concavity check fails
        f = get_entry("square").func
        failed = certify(f, s=1.0, q=2.0, mode=MODE_CONCAVE, target=TARGET_FPRIME_POW)
        assert not failed.passed
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=1.0, p=2.0, q=2.0)
        with pytest.raises(CertificateError, match="certificate failed"):
            rhs_thm4(f, prm, failed)

    def test_missing_exponents_rejected(self):
        f = get_entry("threehalf").func
        with pytest.raises(ConfigError):
            rhs_thm4(f, FracParams(0.0, 1.0, 0.5, 0.5, s=1.0), self.threehalf_cert())


class TestPrintedDiagnostic:
    def test_printed_form_duplicates_hoelder_route(self):
        prm = FracParams(0.0, 1.0, 0.35, 0.75, s=0.5, p=3.0, q=1.5, M=2.0)
        assert rhs_e8_printed(prm) == rhs_thm2(prm)

    def test_requires_p_even_though_official_form_does_not(self):
        with pytest.raises(ConfigError):
            rhs_e8_printed(FracParams(0.0, 1.0, 0.35, 0.75, s=0.5, q=1.5, M=2.0))


class TestStructuralProperties:
    @pytest.mark.parametrize(
        "rhs",
        [rhs_thm1, rhs_thm2, rhs_thm3],
        ids=["gamma-ratio", "hoelder", "power-mean"],
    )
    def test_endpoint_symmetry(self, rhs):
        at_a = rhs(FracParams(0.0, 1.0, 0.0, 0.75, s=0.5, p=2.0, q=2.0, M=2.0))
        at_b = rhs(FracParams(0.0, 1.0, 1.0, 0.75, s=0.5, p=2.0, q=2.0, M=2.0))
        assert at_a == at_b

    @settings(max_examples=25, deadline=None)
    @given(m=st.floats(min_value=0.01, max_value=50.0))
    def test_linear_in_m(self, m):
        base = FracParams(0.0, 1.0, 0.3, 0.75, s=0.5, p=2.0, q=2.0, M=m)
        doubled = FracParams(0.0, 1.0, 0.3, 0.75, s=0.5, p=2.0, q=2.0, M=2.0 * m)
        for rhs in (rhs_thm1, rhs_thm2, rhs_thm3):
            assert rhs(doubled) == pytest.approx(2.0 * rhs(base), rel=1e-14)


class TestClassicalRhs:
    def test_ostrowski_hand_value(self):
        assert rhs_ostrowski(FracParams(0.0, 1.0, 0.25, 1.0, M=2.0)) == pytest.approx(
            0.625, rel=1e-15
        )

    def test_ostrowski_minimal_at_midpoint(self):
        mid = rhs_ostrowski(FracParams(0.0, 1.0, 0.5, 1.0, M=1.0))
        off = rhs_ostrowski(FracParams(0.0, 1.0, 0.8, 1.0, M=1.0))
        assert mid == pytest.approx(0.25, rel=1e-15)
        assert off > mid

    def test_msconvex_hand_value(self):
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, M=2.0)
        assert rhs_alomari_msconvex(prm) == pytest.approx(0.5, rel=1e-15)


class TestEvaluateTheorem:
    def test_unknown_id_rejected(self):
        with pytest.raises(ConfigError, match="unknown theorem id"):
            evaluate_theorem("E10", get_entry("square"), FracParams(0.0, 1.0, 0.5, 0.5))

    def test_frozen_certified_row(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5)
        (row,) = evaluate_theorem("E6", entry, prm)
        assert row.theorem_id == "E6"
        assert row.function == "square"
        assert row.prm.M == 2.0  # resolved from the catalog bound
        assert row.asserted and row.holds and row.note == ""
        assert row.lhs == pytest.approx(0.18856180831641306, rel=1e-10)
        assert row.rhs == pytest.approx(1.2624671484563437, rel=1e-13)
        assert row.margin == row.rhs - row.lhs

    def test_uncertified_hypothesis_is_informational(self):
        # |f'|^2 of t^2 is convex, so the concavity gate cannot pass
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=1.0, p=2.0, q=2.0)
        (row,) = evaluate_theorem("E9", entry, prm)
        assert not row.asserted
        assert "hypothesis not certified" in row.note
        assert math.isfinite(row.rhs) and math.isfinite(row.margin)

    def test_certified_concave_row_asserted(self):
        entry = get_entry("threehalf")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=1.0, p=2.0, q=2.0)
        (row,) = evaluate_theorem("E9", entry, prm)
        assert row.asserted and row.holds

    def test_powermean_row_needs_no_p(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, q=1.5)
        (row,) = evaluate_theorem("E8proof", entry, prm)
        assert row.asserted and row.holds

    def test_hoelder_row_missing_exponents_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_theorem(
                "E7", get_entry("square"), FracParams(0.0, 1.0, 0.5, 0.5, s=0.5)
            )

    def test_false_bound_reported_as_violation(self):
        # deliberately undersized M: the certificate passes, the bound fails
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, M=1e-3)
        (row,) = evaluate_theorem("E6", entry, prm)
        assert row.asserted
        assert row.margin < 0.0
        assert not row.holds

    def test_margin_tolerance_couples_to_verdict(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 0.5, s=0.5, M=1e-3)
        (row,) = evaluate_theorem("E6", entry, prm, margin_tol=1.0)
        assert row.holds  # same negative margin, wider tolerance

    def test_hh_pair_rows(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=0.5, M=2.0)
        lower, upper = evaluate_theorem("e13", entry, prm)
        assert lower.note.endswith("hh-lower")
        assert upper.note.endswith("hh-upper")
        assert lower.lhs == pytest.approx(0.25 / math.sqrt(2.0), rel=1e-14)
        assert lower.rhs == pytest.approx(1.0 / 3.0, abs=1e-10)
        assert upper.lhs == lower.rhs
        assert upper.rhs == pytest.approx(1.0 / 1.5, rel=1e-14)
        assert lower.asserted and upper.asserted
        assert lower.holds and upper.holds

    def test_hh_negative_function_not_asserted(self):
        dipped = CatalogEntry(
            func=Function1D(
                "dipped",
                lambda t: np.asarray(t, dtype=float) - 0.6,
                lambda t: np.ones_like(np.asarray(t, dtype=float)),
                0.0,
                1.0,
            ),
            s_convex=(),
            s_concave=(),
            analytic_m=1.0,
            summary="affine shifted below zero",
        )
        prm = FracParams(0.0, 1.0, 0.5, 1.0, s=1.0, M=1.0)
        lower, upper = evaluate_theorem("e13", dipped, prm)
        assert not lower.asserted and not upper.asserted
        assert "negative values" in lower.note

    def test_e1_uses_precomputed_mean(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.25, 1.0, M=2.0)
        (row,) = evaluate_theorem("e1", entry, prm, mean=Estimate(1.0 / 3.0, 0.0))
        assert row.lhs == abs(0.0625 - 1.0 / 3.0)
        assert row.quad_error_budget == 0.0

    def test_t5_missing_q_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_theorem(
                "t5_146", get_entry("square"), FracParams(0.0, 1.0, 0.5, 1.0, s=0.5, M=2.0)
            )


class TestCertCache:
    def test_memoizes_identical_requests(self):
        cache = CertCache()
        entry = get_entry("square")
        first = cache.get(entry, TARGET_FPRIME, MODE_CONVEX, 0.5)
        second = cache.get(entry, TARGET_FPRIME, MODE_CONVEX, 0.5)
        assert first is second

    def test_distinct_parameters_recertify(self):
        cache = CertCache()
        entry = get_entry("square")
        a = cache.get(entry, TARGET_FPRIME_POW, MODE_CONVEX, 0.5, q=1.5)
        b = cache.get(entry, TARGET_FPRIME_POW, MODE_CONVEX, 0.5, q=2.0)
        assert a is not b


class TestClassicalSuite:
    def test_row_order_and_verdicts(self):
        entry = get_entry("square")
        prm = FracParams(0.0, 1.0, 0.25, 1.0, s=0.5, p=2.0, q=2.0, M=2.0)
        rows = classical_suite(entry, prm)
        assert [r.theorem_id for r in rows] == [
            "e1", "e13", "e13", "e14", "t5_146", "t6_147",
        ]
        for row in rows:
            if row.asserted:
                assert row.holds, row

    def test_affine_sharpness_witness(self):
        entry = get_entry("affine")
        for x in (0.0, 1.0):
            prm = FracParams(0.0, 1.0, x, 1.0, s=1.0, p=2.0, q=2.0, M=1.0)
            rows = [r for r in classical_suite(entry, prm) if r.theorem_id == "e1"]
            assert abs(rows[0].margin) <= 1e-12


class TestReductionCheck:
    @pytest.mark.parametrize("tid", FRACTIONAL_IDS)
    def test_closed_forms_coincide_at_alpha_one(self, tid):
        assert reduction_check(tid) <= REDUCTION_TOL

    def test_custom_derivative_for_midpoint_bound(self):
        dev = reduction_check("E9", f=get_entry("exp").func)
        assert dev <= REDUCTION_TOL

    def test_unknown_id_rejected(self):
        with pytest.raises(ConfigError):
            reduction_check("e1")
