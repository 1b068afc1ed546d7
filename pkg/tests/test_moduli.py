"""Moduli of smoothness: analytic reference values and structural properties."""

import math

import numpy as np
import pytest

from smk_stancu import (
    ModulusConfig,
    builtin,
    lipschitz_maximal,
    omega,
    omega2,
    steklov,
    weighted_modulus,
)

CFG = ModulusConfig(domain_cap=10.0, grid_step=1e-3)


class TestOmega:
    def test_identity_gives_delta(self):
        assert omega(builtin("identity"), 0.37, CFG) == pytest.approx(0.37, rel=1e-9)

    def test_sine_closed_form(self):
        # sup |sin(s) - sin(t)| over |s - t| <= delta is 2 sin(delta/2)
        assert omega(builtin("sin"), 0.2, CFG) == pytest.approx(2 * math.sin(0.1), rel=1e-5)

    def test_constant_gives_zero(self):
        assert omega(builtin("const1"), 0.5, CFG) == 0.0

    def test_tiny_delta_resolved(self):
        # deltas far below grid_step still come out right (h-ladder refines)
        assert omega(builtin("identity"), 1e-5, CFG) == pytest.approx(1e-5, rel=1e-9)


class TestOmega2:
    def test_linear_vanishes(self):
        assert omega2(builtin("identity"), 0.8, CFG) <= 1e-12

    def test_quadratic_closed_form(self):
        # second difference of t^2 at step h is exactly 2 h^2
        delta = 0.3
        assert omega2(builtin("monomial(2)"), delta, CFG) == pytest.approx(
            2 * delta**2, rel=1e-9
        )

    def test_constant_vanishes(self):
        assert omega2(builtin("const1"), 0.5, CFG) == 0.0


class TestSteklov:
    def test_identity_fixed_point(self):
        for x in (0.0, 0.7, 3.2):
            assert steklov(builtin("identity"), 0.2, x) == pytest.approx(x, abs=1e-13)

    def test_constant_fixed_point(self):
        assert steklov(builtin("const1"), 0.3, 1.1) == pytest.approx(1.0, abs=1e-14)

    def test_quadratic_against_brute_force(self):
        # for t^2 the mean works out to x^2 - (7/12) h^2; cross-check the
        # quadrature against a midpoint-rule double integral
        f = builtin("monomial(2)")
        h, x = 0.1, 1.0
        n = 800
        us = (np.arange(n) + 0.5) * (h / 2) / n
        s = us[:, None] + us[None, :]
        brute = 4.0 / h**2 * float((2.0 * f.eval(x + s) - f.eval(x + 2.0 * s)).sum()) * (
            h / (2 * n)
        ) ** 2
        val = steklov(f, h, x)
        assert val == pytest.approx(brute, rel=1e-7)
        assert val == pytest.approx(x**2 - 7.0 / 12.0 * h**2, rel=1e-12)

    def test_closeness_to_f(self):
        # || f_h - f || over the grid <= omega2(f, h) (plus grid tolerance)
        h = 0.25
        for name in ("sin", "exp", "monomial(2)"):
            f = builtin(name)
            xs = np.linspace(0.0, CFG.domain_cap - 2 * h, 200)
            gap = max(abs(steklov(f, h, float(x)) - float(f.eval(x))) for x in xs)
            assert gap <= omega2(f, h, CFG) * 1.01


class TestLipschitzMaximal:
    def test_identity_order_one(self):
        assert lipschitz_maximal(builtin("identity"), 2.0, 1.0, CFG) == pytest.approx(
            1.0, rel=1e-12
        )

    def test_constant_zero(self):
        assert lipschitz_maximal(builtin("const1"), 1.0, 0.5, CFG) == 0.0

    def test_exp_at_origin_unit_cap(self):
        cfg = ModulusConfig(domain_cap=1.0, grid_step=1e-4)
        # sup (e^t - 1)/t on (0, 1] is attained at t = 1
        assert lipschitz_maximal(builtin("exp"), 0.0, 1.0, cfg) == pytest.approx(
            math.e - 1.0, rel=1e-6
        )

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            lipschitz_maximal(builtin("sin"), 1.0, 0.0, CFG)


class TestWeightedModulus:
    def test_constant_zero(self):
        assert weighted_modulus(builtin("const1"), 0.7, CFG) == 0.0

    def test_identity_maximum(self):
        # h/((1+h^2)(1+x^2)) peaks at h = 1, x = 0
        assert weighted_modulus(builtin("identity"), 1.0, CFG) == pytest.approx(0.5, rel=1e-9)

    def test_vanishes_with_delta(self):
        f = builtin("monomial(2)")
        vals = [weighted_modulus(f, d, CFG) for d in (0.5, 0.1, 0.02, 0.004)]
        assert all(vals[k + 1] < vals[k] for k in range(3))
        assert vals[-1] < 0.05


class TestStructure:
    @pytest.mark.parametrize("name", ["sin", "exp", "monomial(2)"])
    def test_monotone_in_delta(self, name):
        f = builtin(name)
        for fn in (omega, omega2, weighted_modulus):
            vals = [fn(f, d, CFG) for d in (0.05, 0.1, 0.2, 0.4, 0.8)]
            assert all(vals[k + 1] >= vals[k] - 1e-12 for k in range(4))

    @pytest.mark.parametrize("lam", [2, 3])
    def test_subadditivity_surrogate(self, lam):
        # omega(f, lam * delta) <= (1 + lam) omega(f, delta)
        delta = 0.12
        for name in ("sin", "exp", "monomial(2)", "cos"):
            f = builtin(name)
            assert omega(f, lam * delta, CFG) <= (1 + lam) * omega(f, delta, CFG) * (1 + 1e-9)

    def test_grid_convergence(self):
        fine = ModulusConfig(domain_cap=10.0, grid_step=5e-4)
        for name in ("sin", "exp"):
            f = builtin(name)
            for fn in (omega, omega2):
                coarse_val = fn(f, 0.3, CFG)
                fine_val = fn(f, 0.3, fine)
                assert abs(fine_val - coarse_val) <= 0.01 * max(coarse_val, 1e-12)
