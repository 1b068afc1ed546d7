"""Acceptance criteria, one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred to calibration.
"""

import math
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from smk_stancu import (
    OperatorParams,
    TruncationPolicy,
    builtin,
    bv_rate_bound,
    central_moment,
    central_moment_oracle,
    gruss_residual,
    phi2_growth_constant,
    voronovskaya_residual,
)
from smk_stancu.harness import run_suite, run_table, table_config
from smk_stancu.harness.reference_tables import KNOWN_TYPOS

ORACLE = TruncationPolicy(mass_tol=1e-13, tail_guard=12)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


@pytest.fixture(scope="module")
def moments_suite():
    return run_suite("moments")


@pytest.fixture(scope="module")
def bounds_suite():
    return run_suite("bounds")


def test_table1_reproduction():
    with criterion("Table 1: 24 cells within 1e-3 of printed values, runtime < 1 s"):
        t0 = time.perf_counter()
        t = run_table(table_config(1), reference=1)
        elapsed = time.perf_counter() - t0
        assert not np.isnan(t.values).any()
        assert t.max_abs_dev() < 1e-3
        assert elapsed < 1.0


def test_table2_reproduction():
    with criterion("Table 2: 24 baseline cells within 1e-3 of printed values"):
        t = run_table(table_config(2), reference=2)
        assert not np.isnan(t.values).any()
        assert t.max_abs_dev() < 1e-3


def test_tables_3_and_4_reproduction():
    with criterion(
        "Tables 3-4: non-absent cells within 1e-3 (one annotated reference typo), "
        "absent cells exactly where alpha > 1/n"
    ):
        t3 = run_table(table_config(3), reference=3)
        t4 = run_table(table_config(4), reference=4)
        assert t3.max_abs_dev() < 1e-3
        typo_cells = {(r, c) for (tbl, r, c) in KNOWN_TYPOS if tbl == 4}
        assert t4.max_abs_dev(skip=typo_cells) < 1e-3
        # the excluded cell is a genuine defect of the reference, not of the
        # computation: our value matches the self-consistent reconstruction
        for r, c in typo_cells:
            i, j = t4.row_labels.index(r), t4.col_labels.index(c)
            assert t4.abs_dev[i, j] > 1e-3
            assert abs(t4.values[i, j] - 1.039249) < 1e-3
        for t in (t3, t4):
            computed_absent = np.isnan(t.values)
            reference_absent = np.isnan(t.reference)
            assert (computed_absent == reference_absent).all()
            for i, n in enumerate(t.row_labels):
                for j, alpha in enumerate(t.col_labels):
                    assert computed_absent[i, j] == (alpha > 1 / n + 1e-12)


def test_moment_oracle_equivalence(moments_suite):
    with criterion(
        "Moments: closed forms match the series oracle to 1e-10 over 200 random "
        "tuples (raw 0..3, central 1..2); third-central defect logged, oracle wins"
    ):
        by_name = {r.name: r for r in moments_suite.records}
        assert by_name["raw_moment_oracle_equivalence_r0..3"].status == "pass"
        assert by_name["central_moment_oracle_equivalence_m1..2"].status == "pass"
        logged = by_name["phi3_closed_vs_oracle_max_rel"]
        assert logged.status == "info" and logged.lhs > 1e-8


def test_asymptotic_limit_shrinkage():
    with criterion(
        "Limits: |beta Phi_1 - L1|, |beta Phi_2 - 2x|, |beta^2 Phi_4 - 12x^2|, "
        "|beta^3 Phi_6 - 120x^3| shrink >= 5x from beta=1e2 to 1e4"
    ):
        phi, psi = 0.1, 0.3
        for x in (0.5, 1.0):
            targets = (0.5 - x * psi + phi, 2 * x, 12 * x**2, 120 * x**3)
            errs = {}
            for beta in (100.0, 10000.0):
                p = OperatorParams(1 / beta, phi, psi, beta)
                errs[beta] = (
                    abs(beta * central_moment(p, x, 1) - targets[0]),
                    abs(beta * central_moment(p, x, 2) - targets[1]),
                    abs(beta**2 * central_moment_oracle(p, x, 4, ORACLE) - targets[2]),
                    abs(beta**3 * central_moment_oracle(p, x, 6, ORACLE) - targets[3]),
                )
            for k in range(4):
                assert errs[100.0][k] >= 5.0 * errs[10000.0][k]


def test_voronovskaya_arbitration():
    with criterion(
        "Asymptotic coefficient arbitration: beta (R(t^2) - x^2) at beta=1e4 is "
        "within 1e-2 of 3.0 and at least 1.9 from the printed 5.0"
    ):
        rep = voronovskaya_residual(builtin("monomial(2)"), 1.0, 0.0, 0.0, (10000.0,))
        residual = rep.points[-1][1]
        assert abs(residual - 3.0) <= 1e-2
        assert abs(residual - 5.0) >= 1.9


def test_gruss_voronovskaya():
    with criterion(
        "Covariance defect for (sin, exp) at x=0.5: residual at beta=1e4 within "
        "2% of 2x cos(0.5) e^0.5"
    ):
        rep = gruss_residual(builtin("sin"), builtin("exp"), 0.5, 0.1, 0.3, (10000.0,))
        assert rep.limit == pytest.approx(math.cos(0.5) * math.exp(0.5), rel=1e-12)
        assert abs(rep.points[-1][1] - rep.limit) <= 0.02 * abs(rep.limit)


def test_bound_validity_suite(bounds_suite):
    with criterion(
        "Bound validity: every theorem bound on the standard grid has lhs <= rhs; "
        "existential constants stable (<10% between beta=1e2 and 1e3)"
    ):
        fails = [r for r in bounds_suite.records if r.status == "fail"]
        assert not fails, [f.name for f in fails]
        by_name = {r.name: r for r in bounds_suite.records}
        assert by_name["direct_bound_M1_stability_1e2_vs_1e3"].status == "pass"
        assert by_name["quant_voronovskaya_C_global_stability_1e2_vs_1e3"].status == "pass"


def test_bv_rate_bound():
    with criterion(
        "Bounded-variation rate: for exp at x=1 the assembled bound dominates the "
        "error at beta in {1e2, 1e4} and rhs * sqrt(beta) stays bounded"
    ):
        M = phi2_growth_constant()[0]
        scaled = []
        for beta in (100.0, 10000.0):
            p = OperatorParams(1 / beta, 0.1, 0.9, beta)
            rep = bv_rate_bound(p, builtin("exp"), 1.0, M, policy=ORACLE)
            assert rep.satisfied
            scaled.append(rep.rhs * math.sqrt(beta))
        assert scaled[1] <= scaled[0] <= 10.0


def test_negative_control_mutation():
    with criterion(
        "Negative control: a 1e-6 relative mutation of the second-central-moment "
        "closed form makes the moments suite exit nonzero"
    ):
        res = run_suite("moments", phi2_mutation=1e-6)
        assert res.exit_code != 0
        # and through the CLI surface, which scripts and CI rely on
        r = subprocess.run(
            [sys.executable, "-m", "smk_stancu", "bounds", "--suite", "moments",
             "--mutate-phi2", "1e-6", "--out", "/tmp/_mutation_report.csv"],
            capture_output=True, text=True,
        )
        assert r.returncode == 2


def test_clean_suites_exit_zero(moments_suite, bounds_suite):
    with criterion("Unmutated moments/bounds/asymptotics/tables suites all exit 0"):
        assert moments_suite.exit_code == 0
        assert bounds_suite.exit_code == 0
        assert run_suite("asymptotics").exit_code == 0
        assert run_suite("tables").exit_code == 0
