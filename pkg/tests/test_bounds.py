"""Theorem bound assembly: reference cases, satisfaction, residual ladders."""

import math

import numpy as np
import pytest

from smk_stancu import (
    DomainError,
    OperatorParams,
    TruncationPolicy,
    bound_c1,
    bound_direct,
    bound_lipschitz_maximal,
    bound_lipschitz_space,
    bound_steklov,
    builtin,
    bv_rate_bound,
    central_moment,
    fit_lipschitz_space_constant,
    gruss_residual,
    phi2_growth_constant,
    quantitative_voronovskaya,
    voronovskaya_residual,
    weighted_image_bound,
    weighted_norm_error,
)

POLICY = TruncationPolicy(mass_tol=1e-13, tail_guard=12)


class TestSteklovBound:
    def test_constant_trivial(self):
        rep = bound_steklov(OperatorParams(0.05, 0.1, 0.3, 10.0), builtin("const1"), 0.5)
        assert rep.lhs <= 1e-12 and rep.rhs <= 1e-12 and rep.satisfied

    def test_identity_case(self):
        beta = 100.0
        p = OperatorParams(1 / beta, 0.0, 0.0, beta)
        rep = bound_steklov(p, builtin("identity"), 1.0, policy=POLICY)
        assert rep.lhs == pytest.approx(1 / 200, rel=1e-9)  # |Phi_1| = 1/(2 beta)
        # omega2 of a linear function vanishes, so the rhs is 5 omega = 5 sqrt(Phi_2)
        assert rep.rhs == pytest.approx(5 * math.sqrt(central_moment(p, 1.0, 2)), rel=1e-6)
        assert rep.satisfied

    def test_sin_case(self):
        p = OperatorParams(1 / 50, 0.1, 0.3, 50.0)
        assert bound_steklov(p, builtin("sin"), 0.5, policy=POLICY).satisfied


class TestC1Bound:
    def test_constant_trivial(self):
        rep = bound_c1(OperatorParams(0.05, 0.1, 0.3, 10.0), builtin("const1"), 0.5)
        assert rep.lhs <= 1e-12 and rep.rhs <= 1e-12 and rep.satisfied

    def test_identity_equality(self):
        p = OperatorParams(0.05, 0.0, 0.0, 10.0)
        rep = bound_c1(p, builtin("identity"), 1.0, policy=POLICY)
        assert rep.rhs == pytest.approx(1 / 20, rel=1e-12)  # omega of constant f' is 0
        assert rep.lhs == pytest.approx(1 / 20, rel=1e-9)
        assert rep.satisfied

    def test_exp_case(self):
        p = OperatorParams(1 / 100, 0.1, 0.9, 100.0)
        assert bound_c1(p, builtin("exp"), 0.5, policy=POLICY).satisfied


class TestLipschitzBounds:
    def test_maximal_constant_trivial(self):
        rep = bound_lipschitz_maximal(
            OperatorParams(0.05, 0.1, 0.3, 10.0), builtin("const1"), 0.5, 0.7
        )
        assert rep.rhs == 0.0 and rep.satisfied

    def test_maximal_identity_order_one(self):
        p = OperatorParams(0.01, 0.0, 0.0, 100.0)
        rep = bound_lipschitz_maximal(p, builtin("identity"), 1.0, 1.0, policy=POLICY)
        phi2 = central_moment(p, 1.0, 2)
        assert rep.rhs == pytest.approx(math.sqrt(phi2), rel=1e-9)
        assert rep.lhs == pytest.approx(abs(central_moment(p, 1.0, 1)), rel=1e-9)
        assert rep.satisfied  # Cauchy-Schwarz ordering |Phi_1| <= sqrt(Phi_2)

    def test_maximal_sin(self):
        p = OperatorParams(1 / 100, 0.0, 0.0, 100.0)
        assert bound_lipschitz_maximal(p, builtin("sin"), 1.0, 0.5, policy=POLICY).satisfied

    def test_space_rejects_origin(self):
        with pytest.raises(DomainError):
            bound_lipschitz_space(
                OperatorParams(0.05, 0.0, 0.0, 10.0), builtin("sin"), 0.0, 1.0, 1.0, 1.0, 1.0
            )

    def test_space_constant_zero_gives_zero_bound(self):
        rep = bound_lipschitz_space(
            OperatorParams(0.05, 0.1, 0.3, 10.0), builtin("const1"), 0.5, 1.0, 1.0, 1.0, 0.0
        )
        assert rep.rhs == 0.0 and rep.satisfied

    def test_space_identity_formula(self):
        p = OperatorParams(0.01, 0.0, 0.0, 100.0)
        rep = bound_lipschitz_space(p, builtin("identity"), 1.0, 1.0, 0.0, 1.0, 1.0, policy=POLICY)
        assert rep.rhs == pytest.approx(math.sqrt(central_moment(p, 1.0, 2)), rel=1e-12)
        assert rep.satisfied

    def test_space_with_fitted_constant(self):
        p = OperatorParams(1 / 50, 0.0, 0.0, 50.0)
        f = builtin("sin")
        M_f = fit_lipschitz_space_constant(f, 1.0, 1.0, 1.0)
        assert bound_lipschitz_space(p, f, 0.5, 1.0, 1.0, 1.0, M_f, policy=POLICY).satisfied


class TestDirectBound:
    def test_constant_all_zero(self):
        rep = bound_direct(OperatorParams(0.05, 0.1, 0.3, 10.0), builtin("const1"), 0.5)
        assert rep.lhs <= 1e-12
        assert rep.context["omega_term"] == 0.0 and rep.context["omega2_term"] == 0.0
        assert rep.context["m1_required"] == 0.0

    def test_gamma_formula(self):
        p = OperatorParams(0.1, 0.0, 0.0, 10.0)
        rep = bound_direct(p, builtin("exp"), 1.0, policy=POLICY)
        assert rep.context["gamma_n"] == pytest.approx(
            central_moment(p, 1.0, 2) + 0.05**2, rel=1e-12
        )
        assert rep.context["eta_n"] == pytest.approx(0.05, rel=1e-12)

    def test_fitted_constant_finite_and_stable(self):
        # exp: the capped-domain omega term alone covers the error, so the
        # required M_1 degenerates to 0; sin exercises the nontrivial fit
        for beta in (100.0, 1000.0):
            p = OperatorParams(1 / beta, 0.0, 0.0, beta)
            rep = bound_direct(p, builtin("exp"), 0.5, policy=POLICY)
            assert rep.context["m1_required"] == 0.0
        vals = {}
        for beta in (100.0, 1000.0):
            p = OperatorParams(1 / beta, 0.1, 0.3, beta)
            vals[beta] = bound_direct(p, builtin("sin"), 1.0, policy=POLICY).context["m1_required"]
        assert 0 < vals[1000.0] < math.inf
        assert abs(vals[1000.0] - vals[100.0]) / vals[100.0] < 0.10


class TestVoronovskaya:
    def test_identity_both_candidates_agree(self):
        rep = voronovskaya_residual(builtin("identity"), 1.0, 0.0, 0.0, (100.0, 10000.0))
        assert rep.limit_published == rep.limit_consistent == 0.5
        assert rep.points[-1][1] == pytest.approx(0.5, abs=1e-6)
        assert rep.approaches == "consistent"

    def test_quadratic_arbitration(self):
        rep = voronovskaya_residual(
            builtin("monomial(2)"), 1.0, 0.0, 0.0, (100.0, 1000.0, 10000.0)
        )
        # exact residual is (1 + 9 beta)/(3 beta) = 3 + 1/(3 beta)
        for beta, r in rep.points:
            assert r == pytest.approx(3.0 + 1.0 / (3.0 * beta), rel=1e-7)
        assert rep.limit_consistent == 3.0 and rep.limit_published == 5.0
        assert rep.approaches == "consistent"

    def test_exp_with_shifts(self):
        rep = voronovskaya_residual(builtin("exp"), 1.0, 0.1, 0.3, (10000.0,))
        assert rep.limit_consistent == pytest.approx(1.3 * math.e, rel=1e-12)
        assert rep.points[-1][1] == pytest.approx(1.3 * math.e, rel=1e-3)


class TestQuantitativeVoronovskaya:
    def test_quadratic_is_taylor_exact(self):
        p = OperatorParams(1 / 100, 0.0, 0.0, 100.0)
        rep = quantitative_voronovskaya(p, builtin("monomial(2)"), 1.0, policy=POLICY)
        assert rep.lhs <= 1e-8

    def test_constant_trivial(self):
        p = OperatorParams(1 / 100, 0.0, 0.0, 100.0)
        assert quantitative_voronovskaya(p, builtin("const1"), 1.0).lhs <= 1e-9

    def test_exp_ratio_bounded_nonincreasing(self):
        ratios = []
        for beta in (100.0, 1000.0, 10000.0):
            p = OperatorParams(1 / beta, 0.1, 0.3, beta)
            rep = quantitative_voronovskaya(p, builtin("exp"), 0.5, policy=POLICY)
            ratios.append(rep.context["ratio"])
        assert all(np.isfinite(ratios))
        assert all(ratios[k + 1] <= ratios[k] * 1.02 for k in range(2))


class TestGruss:
    def test_identity_pair_variance_limit(self):
        rep = gruss_residual(
            builtin("identity"), builtin("identity"), 1.0, 0.0, 0.0, (100.0, 10000.0)
        )
        assert rep.limit == 2.0
        assert rep.points[-1][1] == pytest.approx(2.0, rel=1e-3)

    def test_constant_factor_trivial(self):
        rep = gruss_residual(builtin("const1"), builtin("exp"), 0.5, 0.1, 0.3, (100.0,))
        assert abs(rep.points[0][1]) <= 1e-8

    def test_sin_exp_limit_value(self):
        rep = gruss_residual(builtin("sin"), builtin("exp"), 0.5, 0.1, 0.3, (10000.0,))
        assert rep.limit == pytest.approx(math.cos(0.5) * math.exp(0.5), rel=1e-12)
        assert rep.points[-1][1] == pytest.approx(rep.limit, rel=0.02)


class TestBVRateBound:
    def test_identity_equality_case(self):
        p = OperatorParams(0.05, 0.0, 0.0, 10.0)
        rep = bv_rate_bound(p, builtin("identity"), 1.0, 1.0, policy=POLICY)
        assert rep.rhs == pytest.approx(0.05, rel=1e-12)  # only the mean term survives
        assert rep.lhs == pytest.approx(0.05, rel=1e-9)
        assert rep.satisfied

    def test_constant_trivial(self):
        p = OperatorParams(0.05, 0.1, 0.3, 10.0)
        rep = bv_rate_bound(p, builtin("const1"), 1.0, 1.0)
        assert rep.lhs <= 1e-12 and rep.rhs == 0.0

    def test_exp_dominated_and_sqrt_beta_bounded(self):
        M = phi2_growth_constant()[0]
        scaled = []
        for beta in (100.0, 10000.0):
            p = OperatorParams(1 / beta, 0.1, 0.9, beta)
            rep = bv_rate_bound(p, builtin("exp"), 1.0, M, policy=POLICY)
            assert rep.satisfied
            scaled.append(rep.rhs * math.sqrt(beta))
        assert scaled[1] <= scaled[0]  # rhs decays at least like 1/sqrt(beta)

    def test_kink_jump_term_dominates_at_kink(self):
        M = phi2_growth_constant()[0]
        p = OperatorParams(1 / 100, 0.0, 0.0, 100.0)
        rep = bv_rate_bound(p, builtin("kink"), 1.0, M, policy=POLICY)
        # slopes -1 / +1: mean term and variation terms vanish, jump term remains
        assert rep.context["term_mean"] == 0.0
        assert rep.context["term_jump"] == pytest.approx(math.sqrt(M / 100.0) * 2.0, rel=1e-12)
        assert rep.context["term_var_left"] == 0.0 and rep.context["term_var_right"] == 0.0
        assert rep.satisfied

    def test_rejects_origin(self):
        with pytest.raises(DomainError):
            bv_rate_bound(OperatorParams(0.05, 0.0, 0.0, 10.0), builtin("exp"), 0.0, 1.0)


class TestWeightedSpace:
    def test_norm_error_bound_formula_r1(self):
        p = OperatorParams(0.05, 0.1, 0.3, 10.0)
        rep = weighted_norm_error(p, 1)
        expected = (1 + 0.2) / (2 * 10.3) + (1 - 10.0 / 10.3) * 0.5
        assert rep.closed_bound == pytest.approx(expected, rel=1e-12)
        assert rep.satisfied

    def test_norm_error_small_at_large_beta(self):
        p = OperatorParams(1e-4, 0.1, 0.3, 1e4)
        rep = weighted_norm_error(p, 2)
        assert rep.measured_sup < 1e-3
        assert rep.satisfied

    def test_image_bound_kappa_values(self):
        rep = weighted_image_bound(OperatorParams(0.0, 0.0, 0.0, 10.0))
        assert rep.kappa == pytest.approx(0.2, rel=1e-12)
        assert rep.bound == pytest.approx(2.2, rel=1e-12)
        assert rep.satisfied
        rep = weighted_image_bound(OperatorParams(0.2, 0.1, 0.9, 5.0))
        assert rep.kappa == pytest.approx(16.0 / 34.81, rel=1e-10)
        assert rep.satisfied

    def test_kappa_vanishes_asymptotically(self):
        kappas = [
            weighted_image_bound(OperatorParams(1 / b, 0.1, 0.3, b)).kappa
            for b in (10.0, 1000.0, 100000.0)
        ]
        assert kappas[0] > kappas[1] > kappas[2]
        assert kappas[-1] < 1e-4

    def test_invalid_order(self):
        with pytest.raises(DomainError):
            weighted_norm_error(OperatorParams(0.05, 0.0, 0.0, 10.0), 3)


class TestReportInvariant:
    def test_satisfied_definition(self):
        p = OperatorParams(1 / 50, 0.1, 0.3, 50.0)
        rep = bound_steklov(p, builtin("sin"), 0.5, policy=POLICY)
        assert rep.satisfied == (rep.lhs <= rep.rhs + 1e-12)
        assert rep.context["f"] == "sin" and rep.context["beta"] == 50.0
