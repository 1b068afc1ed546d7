"""Basis weights: rising factorial, single weights, truncated sequences."""

import math

import numpy as np
import pytest

from smk_stancu import (
    DomainError,
    OperatorParams,
    TruncationFailure,
    TruncationPolicy,
    rising_factorial,
    weight,
    weight_sequence,
)


class TestParams:
    def test_phi_must_not_exceed_psi(self):
        with pytest.raises(DomainError):
            OperatorParams(0.1, 0.5, 0.3, 10.0)

    def test_zero_shift_allowed(self):
        OperatorParams(0.1, 0.0, 0.0, 10.0)

    def test_beta_below_one_rejected(self):
        with pytest.raises(DomainError):
            OperatorParams(0.1, 0.0, 0.0, 0.5)

    def test_negative_alpha_rejected(self):
        with pytest.raises(DomainError):
            OperatorParams(-0.1, 0.0, 0.0, 10.0)

    def test_asymptotic_regime_check(self):
        OperatorParams(0.1, 0.0, 0.0, 10.0).require_asymptotic()
        with pytest.raises(DomainError):
            OperatorParams(0.2, 0.0, 0.0, 10.0).require_asymptotic()

    def test_policy_validation(self):
        with pytest.raises(DomainError):
            TruncationPolicy(mass_tol=0.0)
        with pytest.raises(DomainError):
            TruncationPolicy(max_terms=0)


class TestRisingFactorial:
    def test_direct_product(self):
        # 1 * 1.5 * 2
        assert rising_factorial(1.0, 3, 0.5) == pytest.approx(3.0, rel=1e-15)

    def test_empty_product_is_one(self):
        assert rising_factorial(0.7, 0, 0.2) == 1.0

    def test_zero_x_kills_product(self):
        assert rising_factorial(0.0, 2, 0.3) == 0.0

    def test_negative_index_rejected(self):
        with pytest.raises(DomainError):
            rising_factorial(1.0, -1, 0.1)


class TestWeight:
    def test_poisson_limit_at_alpha_zero(self):
        p = OperatorParams(0.0, 0.0, 0.0, 1.0)
        assert weight(p, 1.0, 0) == pytest.approx(math.exp(-1.0), rel=1e-14)
        assert weight(p, 1.0, 3) == pytest.approx(math.exp(-1.0) / 6.0, rel=1e-13)

    def test_x_zero_concentrates_at_origin(self):
        p = OperatorParams(0.3, 0.1, 0.2, 7.0)
        assert weight(p, 0.0, 0) == 1.0
        assert weight(p, 0.0, 4) == 0.0

    def test_head_weight_closed_form(self):
        # (1 + beta*alpha)^(-x/alpha) = 2^(-5)
        p = OperatorParams(0.1, 0.0, 0.0, 10.0)
        assert weight(p, 0.5, 0) == pytest.approx(0.03125, rel=1e-14)

    def test_rejects_negative_x(self):
        p = OperatorParams(0.1, 0.0, 0.0, 10.0)
        with pytest.raises(DomainError):
            weight(p, -0.5, 1)

    def test_matches_definition_directly(self):
        # (1+ba)^(-x/a) (a + 1/b)^(-i) x^(i,-a) / i!
        p = OperatorParams(0.2, 0.0, 0.0, 5.0)
        x, i = 0.7, 4
        expected = (
            (1 + p.beta * p.alpha) ** (-x / p.alpha)
            * (p.alpha + 1 / p.beta) ** (-i)
            * rising_factorial(x, i, p.alpha)
            / math.factorial(i)
        )
        assert weight(p, x, i) == pytest.approx(expected, rel=1e-12)


class TestWeightSequence:
    def test_poisson_partial_sums(self):
        p = OperatorParams(0.0, 0.0, 0.0, 1.0)
        seq = weight_sequence(p, 1.0, TruncationPolicy(mass_tol=1e-12))
        assert seq.weights[0] == pytest.approx(math.exp(-1.0), rel=1e-14)
        assert seq.mass >= 1.0 - 1e-12

    def test_x_zero_single_pair(self):
        p = OperatorParams(0.3, 0.0, 0.1, 4.0)
        seq = weight_sequence(p, 0.0)
        assert list(seq.indices) == [0]
        assert list(seq.weights) == [1.0]
        assert seq.mass == 1.0

    def test_normalization(self):
        p = OperatorParams(0.1, 0.0, 0.0, 10.0)
        seq = weight_sequence(p, 0.5, TruncationPolicy(mass_tol=1e-12))
        assert abs(seq.mass - 1.0) <= 1e-12

    def test_truncation_failure_on_tiny_cap(self):
        p = OperatorParams(0.1, 0.0, 0.0, 10.0)
        with pytest.raises(TruncationFailure) as exc:
            weight_sequence(p, 3.0, TruncationPolicy(mass_tol=1e-12, max_terms=10))
        assert exc.value.terms == 10
        assert 0 < exc.value.mass < 1

    def test_nonnegativity_and_mass_window_over_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            beta = float(10 ** rng.uniform(0, 3))
            alpha = float(rng.uniform(0, 2) / beta) if rng.uniform() < 0.7 else 0.0
            psi = float(rng.uniform(0, 1))
            phi = float(rng.uniform(0, 1) * psi)
            x = float(rng.uniform(0, 5))
            seq = weight_sequence(OperatorParams(alpha, phi, psi, beta), x)
            assert np.all(seq.weights >= 0)
            assert 1.0 - 1e-12 <= seq.mass <= 1.0 + 1e-12

    def test_recurrence_consistency(self):
        # w_{i+1} / w_i = (x + i a) / ((i+1)(a + 1/b))
        p = OperatorParams(0.07, 0.0, 0.0, 13.0)
        x = 1.3
        seq = weight_sequence(p, x)
        w = seq.weights
        i = seq.indices[:-1]
        expected = (x + i * p.alpha) / ((i + 1) * (p.alpha + 1 / p.beta))
        live = w[:-1] > 1e-300
        np.testing.assert_allclose(w[1:][live] / w[:-1][live], expected[live], rtol=1e-12)

    def test_alpha_to_zero_continuity(self):
        for beta in (1.0, 5.0, 10.0):
            for x in (0.25, 1.0, 2.0):
                tiny = weight_sequence(OperatorParams(1e-8, 0.0, 0.0, beta), x)
                poisson = weight_sequence(OperatorParams(0.0, 0.0, 0.0, beta), x)
                n = min(len(tiny), len(poisson))
                wt, wp = tiny.weights[:n], poisson.weights[:n]
                live = wp >= 1e-15
                np.testing.assert_allclose(wt[live], wp[live], rtol=1e-5)

    def test_tail_guard_extends_sequence(self):
        p = OperatorParams(0.05, 0.0, 0.0, 10.0)
        short = weight_sequence(p, 1.0, TruncationPolicy(mass_tol=1e-10, tail_guard=0))
        long = weight_sequence(p, 1.0, TruncationPolicy(mass_tol=1e-10, tail_guard=8))
        assert len(long) == len(short) + 8
