"""Invariant suites: moments, asymptotics, bounds, tables.

Each check appends one record (name, lhs, rhs, status); any ``fail`` record
makes the suite exit nonzero.  ``phi2_mutation`` scales the second-central-
moment closed form and exists purely as a negative control: a 1e-6 relative
mutation must make the moments suite fail, demonstrating the oracle
comparisons actually bite.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .. import moments
from ..basis import OperatorParams, TruncationPolicy
from ..bounds import (
    bound_c1,
    bound_direct,
    bound_lipschitz_maximal,
    bound_lipschitz_space,
    bound_steklov,
    bv_rate_bound,
    fit_lipschitz_space_constant,
    gruss_residual,
    quantitative_voronovskaya,
    voronovskaya_residual,
    weighted_image_bound,
    weighted_norm_error,
)
from ..functions import builtin
from ..moduli import DEFAULT_MODULUS
from ..operators import KernelCDF
from .tables import run_table, table_config, write_table_csv
from .reference_tables import KNOWN_TYPOS

__all__ = ["CheckRecord", "SuiteResult", "run_suite", "SUITE_NAMES"]

SUITE_NAMES = ("moments", "bounds", "asymptotics", "tables", "all")

# canonical experiment parameters shared by the suites
_PHI, _PSI = 0.1, 0.3
_ORACLE_POLICY = TruncationPolicy(mass_tol=1e-13, tail_guard=12)
_GRID_FS = ("identity", "monomial(2)", "sin", "exp")
_GRID_XS = (0.1, 0.5, 0.9, 1.0)
_GRID_BETAS = (10.0, 100.0, 1000.0)


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    name: str
    lhs: float
    rhs: float
    status: str  # pass | fail | info
    detail: str = ""


@dataclass
class SuiteResult:
    records: list = field(default_factory=list)
    report_path: Optional[Path] = None

    @property
    def exit_code(self) -> int:
        return 2 if any(r.status == "fail" for r in self.records) else 0

    def add(self, suite, name, lhs, rhs, ok, detail=""):
        status = "pass" if ok else "fail"
        self.records.append(CheckRecord(suite, name, float(lhs), float(rhs), status, detail))

    def info(self, suite, name, lhs, rhs=float("nan"), detail=""):
        self.records.append(CheckRecord(suite, name, float(lhs), float(rhs), "info", detail))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a))


def _moments_suite(res: SuiteResult):
    rng = np.random.default_rng(20240601)
    worst_raw = worst_central = 0.0
    worst_phi3 = 0.0
    for _ in range(200):
        beta = float(10 ** rng.uniform(0.0, 3.0))
        x = float(rng.uniform(0.0, 4.0))
        psi = float(rng.uniform(0.0, 1.0))
        phi = float(rng.uniform(0.0, 1.0) * psi)
        kind = rng.integers(0, 3)
        alpha = 0.0 if kind == 0 else float(rng.uniform(0.0, 1.0) / beta) if kind == 1 else float(
            rng.uniform(0.0, 2.0) / beta
        )
        p = OperatorParams(alpha, phi, psi, beta)
        for r in range(4):
            worst_raw = max(
                worst_raw, _rel(moments.raw_moment(p, x, r), moments.raw_moment_oracle(p, x, r, _ORACLE_POLICY))
            )
        for m in (1, 2):
            worst_central = max(
                worst_central,
                _rel(moments.central_moment(p, x, m), moments.central_moment_oracle(p, x, m, _ORACLE_POLICY)),
            )
        worst_phi3 = max(
            worst_phi3,
            _rel(moments.central_moment(p, x, 3), moments.central_moment_oracle(p, x, 3, _ORACLE_POLICY)),
        )
    res.add("moments", "raw_moment_oracle_equivalence_r0..3", worst_raw, 1e-10, worst_raw <= 1e-10,
            "200 random (alpha, phi, psi, beta, x) tuples")
    res.add("moments", "central_moment_oracle_equivalence_m1..2", worst_central, 1e-10,
            worst_central <= 1e-10)
    # The published third central moment is kept verbatim; log its defect, never fail on it.
    res.info("moments", "phi3_closed_vs_oracle_max_rel", worst_phi3,
             detail="published closed form; oracle authoritative downstream")

    # limit convergence: errors shrink monotonically along the beta ladder at alpha = 1/beta
    betas = (100.0, 1000.0, 10000.0)
    lims_fail = []
    for x in (0.5, 1.0):
        lim = moments.asymptotic_limits(x, _PHI, _PSI)
        errs = {"phi1": [], "phi2": [], "phi4": [], "phi6": []}
        for b in betas:
            p = OperatorParams(1.0 / b, _PHI, _PSI, b)
            errs["phi1"].append(abs(b * moments.central_moment(p, x, 1) - lim.phi1))
            errs["phi2"].append(abs(b * moments.central_moment(p, x, 2) - lim.phi2))
            errs["phi4"].append(abs(b**2 * moments.central_moment_oracle(p, x, 4, _ORACLE_POLICY) - lim.phi4))
            errs["phi6"].append(abs(b**3 * moments.central_moment_oracle(p, x, 6, _ORACLE_POLICY) - lim.phi6))
        for key, seq in errs.items():
            if not all(seq[k + 1] < seq[k] for k in range(len(seq) - 1)):
                lims_fail.append(f"{key}@x={x}: {seq}")
    res.add("moments", "limit_errors_monotone_decreasing", len(lims_fail), 0, not lims_fail,
            "; ".join(lims_fail))

    m_emp, where = moments.phi2_growth_constant()
    res.info("moments", "phi2_growth_constant_M", m_emp, detail=str(where))
    per_beta = {b: moments.phi2_growth_constant(betas=(b,))[0] for b in (100.0, 1000.0)}
    drift = abs(per_beta[1000.0] - per_beta[100.0]) / per_beta[100.0]
    res.add("moments", "phi2_growth_M_stability_1e2_vs_1e3", drift, 0.10, drift < 0.10,
            f"M(100)={per_beta[100.0]:.6g}, M(1000)={per_beta[1000.0]:.6g}")


def _asymptotics_suite(res: SuiteResult):
    # scaled central moments: each limit error shrinks >= 5x from beta=1e2 to 1e4
    for x in (0.5, 1.0):
        lim = moments.asymptotic_limits(x, _PHI, _PSI)
        for key, scale_pow, target, order in (
            ("phi1", 1, lim.phi1, 1),
            ("phi2", 1, lim.phi2, 2),
            ("phi4", 2, lim.phi4, 4),
            ("phi6", 3, lim.phi6, 6),
        ):
            errs = []
            for b in (100.0, 10000.0):
                p = OperatorParams(1.0 / b, _PHI, _PSI, b)
                if order <= 2:
                    val = moments.central_moment(p, x, order)
                else:
                    val = moments.central_moment_oracle(p, x, order, _ORACLE_POLICY)
                errs.append(abs(b**scale_pow * val - target))
            ratio = errs[0] / errs[1] if errs[1] > 0 else math.inf
            res.add("asymptotics", f"limit_shrink_{key}_x={x}", ratio, 5.0, ratio >= 5.0,
                    f"err(1e2)={errs[0]:.3e}, err(1e4)={errs[1]:.3e}")

    # first-order asymptotic arbitration for f = t^2 at x = 1
    rep = voronovskaya_residual(builtin("monomial(2)"), 1.0, 0.0, 0.0, (100.0, 1000.0, 10000.0))
    last = rep.points[-1][1]
    res.add("asymptotics", "voronovskaya_t2_near_consistent_limit", abs(last - rep.limit_consistent),
            1e-2, abs(last - rep.limit_consistent) <= 1e-2,
            f"residual(1e4)={last:.6f}, consistent={rep.limit_consistent}, published={rep.limit_published}")
    res.add("asymptotics", "voronovskaya_t2_far_from_published_limit", abs(last - rep.limit_published),
            1.9, abs(last - rep.limit_published) >= 1.9, f"approaches={rep.approaches}")

    rep = voronovskaya_residual(builtin("exp"), 1.0, _PHI, _PSI, (100.0, 1000.0, 10000.0))
    last = rep.points[-1][1]
    rel = abs(last - rep.limit_consistent) / abs(rep.limit_consistent)
    res.add("asymptotics", "voronovskaya_exp_near_consistent_limit", rel, 1e-2, rel <= 1e-2,
            f"residual(1e4)={last:.6f}, limit={rep.limit_consistent:.6f}")

    g = gruss_residual(builtin("sin"), builtin("exp"), 0.5, _PHI, _PSI, (100.0, 1000.0, 10000.0))
    rel = abs(g.points[-1][1] - g.limit) / abs(g.limit)
    res.add("asymptotics", "gruss_sin_exp_within_2pct", rel, 0.02, rel <= 0.02,
            f"residual(1e4)={g.points[-1][1]:.6f}, limit={g.limit:.6f}")

    # Korovkin: sup over [0,1] of |R(t^r) - x^r| -> 0, monotone for r = 1, 2
    xs = np.linspace(0.0, 1.0, 101)
    for r in (0, 1, 2):
        sups = []
        for b in (10.0, 100.0, 1000.0, 10000.0):
            p = OperatorParams(1.0 / b, _PHI, _PSI, b)
            sups.append(max(abs(moments.raw_moment(p, float(x), r) - x**r) for x in xs))
        vanishing = sups[-1] < 1e-3 if r else sups[-1] == 0.0
        monotone = all(sups[k + 1] < sups[k] for k in range(3)) if r else True
        res.add("asymptotics", f"korovkin_sup_decay_r={r}", sups[-1], 1e-3 if r else 0.0,
                vanishing and monotone, f"sups={['%.3e' % s for s in sups]}")


def _bounds_suite(res: SuiteResult):
    m_emp, _ = moments.phi2_growth_constant()
    lip_consts = {
        name: fit_lipschitz_space_constant(builtin(name), 1.0, 1.0, 1.0, DEFAULT_MODULUS)
        for name in _GRID_FS
    }
    m1_by_beta = {}
    ratio_by_beta = {}
    for beta in _GRID_BETAS:
        p = OperatorParams(1.0 / beta, _PHI, _PSI, beta)
        m1_here = []
        ratio_here = []
        for fname in _GRID_FS:
            f = builtin(fname)
            for x in _GRID_XS:
                ctx = f"{fname}, x={x}, beta={beta:g}"
                for rep in (
                    bound_steklov(p, f, x, policy=_ORACLE_POLICY),
                    bound_c1(p, f, x, policy=_ORACLE_POLICY),
                    bound_lipschitz_maximal(p, f, x, 0.5, policy=_ORACLE_POLICY),
                    bound_lipschitz_maximal(p, f, x, 1.0, policy=_ORACLE_POLICY),
                    bound_lipschitz_space(p, f, x, 1.0, 1.0, 1.0, lip_consts[fname], policy=_ORACLE_POLICY),
                    bv_rate_bound(p, f, x, m_emp, policy=_ORACLE_POLICY),
                ):
                    res.add("bounds", f"{rep.name}[{ctx}]", rep.lhs, rep.rhs, rep.satisfied)
                direct = bound_direct(p, f, x, policy=_ORACLE_POLICY)
                m1_here.append(direct.context["m1_required"])
                qv = quantitative_voronovskaya(p, f, x, policy=_ORACLE_POLICY)
                ratio_here.append(qv.context["ratio"])
        m1_by_beta[beta] = max(m1_here)
        ratio_by_beta[beta] = max(ratio_here)

    res.info("bounds", "direct_bound_M1_per_beta", m1_by_beta[_GRID_BETAS[-1]],
             detail=str({f"{b:g}": round(v, 6) for b, v in m1_by_beta.items()}))
    drift = abs(m1_by_beta[1000.0] - m1_by_beta[100.0]) / m1_by_beta[100.0]
    res.add("bounds", "direct_bound_M1_stability_1e2_vs_1e3", drift, 0.10, drift < 0.10,
            f"M1(100)={m1_by_beta[100.0]:.6g}, M1(1000)={m1_by_beta[1000.0]:.6g}")

    # the quantitative-asymptotic constant is the smallest C valid over the whole
    # ladder; per-beta ratios decay ~1/sqrt(beta), so stability is checked on the
    # running maximum (adding the next decade must not move the fitted constant)
    running = {}
    seen = 0.0
    for b in _GRID_BETAS:
        seen = max(seen, ratio_by_beta[b])
        running[b] = seen
    drift = abs(running[1000.0] - running[100.0]) / running[100.0]
    res.add("bounds", "quant_voronovskaya_C_global_stability_1e2_vs_1e3", drift, 0.10, drift < 0.10,
            f"per-beta ratios: {({f'{b:g}': round(v, 6) for b, v in ratio_by_beta.items()})}")
    decays = all(
        ratio_by_beta[_GRID_BETAS[k + 1]] <= ratio_by_beta[_GRID_BETAS[k]] * 1.05
        for k in range(len(_GRID_BETAS) - 1)
    )
    res.add("bounds", "quant_voronovskaya_C_bounded_nonincreasing", float(not decays), 0, decays)

    for beta in (10.0, 100.0, 10000.0):
        p = OperatorParams(1.0 / beta, _PHI, _PSI, beta)
        for r in (1, 2):
            rep = weighted_norm_error(p, r)
            res.add("bounds", f"weighted_norm_error_r={r}[beta={beta:g}]", rep.measured_sup,
                    rep.closed_bound, rep.satisfied)
        img = weighted_image_bound(p)
        res.add("bounds", f"weighted_image_bound[beta={beta:g}]", img.measured_sup, img.bound,
                img.satisfied)

    # kernel CDF tail inequalities: bounded by the same empirical constant
    worst = 0.0
    for beta in (10.0, 100.0, 1000.0, 10000.0):
        p = OperatorParams(1.0 / beta, _PHI, _PSI, beta)
        for x in (0.5, 1.0, 2.0):
            cdf = KernelCDF(p, x, _ORACLE_POLICY)
            for q in (0.2, 0.5, 0.8):
                y = q * x
                worst = max(worst, cdf(y) * (x - y) ** 2 * (beta + _PSI) / (1 + x) ** 2)
            for q in (1.2, 1.5, 2.0):
                z = q * x
                worst = max(worst, (1.0 - cdf(z)) * (z - x) ** 2 * (beta + _PSI) / (1 + x) ** 2)
    res.add("bounds", "kernel_cdf_tail_bounded_by_M", worst, m_emp, worst <= m_emp + 1e-9,
            f"M={m_emp:.6g}")


def _tables_suite(res: SuiteResult, workdir: Optional[Path]):
    results = {}
    t0 = time.perf_counter()
    results[1] = run_table(table_config(1), reference=1)
    t1_runtime = time.perf_counter() - t0
    for n in (2, 3, 4, 5):
        results[n] = run_table(table_config(n), reference=n)
    res.add("tables", "table1_runtime_seconds", t1_runtime, 1.0, t1_runtime < 1.0)

    for n in (1, 2, 3):
        dev = results[n].max_abs_dev()
        res.add("tables", f"table{n}_max_abs_dev", dev, 1e-3, dev < 1e-3)

    typo_cells = {(r, c) for (tbl, r, c) in KNOWN_TYPOS if tbl == 4}
    dev4 = results[4].max_abs_dev(skip=typo_cells)
    res.add("tables", "table4_max_abs_dev_excluding_known_typo", dev4, 1e-3, dev4 < 1e-3)
    for (tbl, r, c), note in KNOWN_TYPOS.items():
        t = results[tbl]
        i, j = t.row_labels.index(r), t.col_labels.index(c)
        printed_dev = float(t.abs_dev[i, j])
        # the annotated reference cell must really disagree, and our value must
        # match the self-consistent reconstruction recorded in the annotation
        consistent = float(note.split("self-consistent value is ")[1].split(" ")[0])
        ok = printed_dev > 1e-3 and abs(t.values[i, j] - consistent) < 1e-3
        res.add("tables", f"table{tbl}_known_typo_cell[{r},{c:g}]", printed_dev, 1e-3, ok, note)

    # absent cells exactly where the reference prints "-" (alpha > 1/n)
    for n in (3, 4):
        t = results[n]
        mismatches = 0
        for i in range(len(t.row_labels)):
            for j in range(len(t.col_labels)):
                if np.isnan(t.values[i, j]) != np.isnan(t.reference[i, j]):
                    mismatches += 1
        res.add("tables", f"table{n}_absent_cells_match", mismatches, 0, mismatches == 0)

    # cross-table consistency: shared cells go through the same computation path
    worst = 0.0
    for pair, ladder_tbl in ((1, 3), (2, 4)):
        wide, ladder = results[pair], results[ladder_tbl]
        j_ladder = ladder.col_labels.index(1 / 50)
        i_wide = wide.row_labels.index(0.1)
        for n in (5, 10, 20):
            a = wide.values[i_wide, wide.col_labels.index(n)]
            b = ladder.values[ladder.row_labels.index(n), j_ladder]
            worst = max(worst, abs(a - b))
    res.add("tables", "cross_table_consistency_alpha_1_50", worst, 1e-12, worst <= 1e-12)

    res.info("tables", "table5_max_abs_dev_unasserted", results[5].max_abs_dev(),
             detail="reference provenance unresolved; structural reproduction only")
    all_present = not np.isnan(results[5].values).any()
    res.add("tables", "table5_all_cells_present", float(not all_present), 0, all_present)

    if workdir is not None:
        p1 = write_table_csv(results[1], workdir / "table1_a.csv")
        p2 = write_table_csv(results[1], workdir / "table1_b.csv")
        identical = p1.read_bytes() == p2.read_bytes()
        res.add("tables", "table_csv_deterministic", float(not identical), 0, identical)


def run_suite(
    name: str,
    out_path=None,
    fmt: str = "csv",
    phi2_mutation: Optional[float] = None,
    workdir=None,
) -> SuiteResult:
    """Run one invariant suite (or all); returns records and an exit code."""
    if name not in SUITE_NAMES:
        raise ValueError(f"suite must be one of {SUITE_NAMES}, got {name!r}")
    res = SuiteResult()
    old_scale = moments._PHI2_SCALE
    if phi2_mutation is not None:
        moments._PHI2_SCALE = 1.0 + phi2_mutation
    try:
        if name in ("moments", "all"):
            _moments_suite(res)
        if name in ("asymptotics", "all"):
            _asymptotics_suite(res)
        if name in ("bounds", "all"):
            _bounds_suite(res)
        if name in ("tables", "all"):
            _tables_suite(res, Path(workdir) if workdir is not None else None)
    finally:
        moments._PHI2_SCALE = old_scale

    if out_path is not None:
        path = Path(out_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        delim = "\t" if fmt == "tsv" else ","
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, delimiter=delim, lineterminator="\n")
            w.writerow(["suite", "check", "lhs", "rhs", "status", "detail"])
            for r in res.records:
                w.writerow([r.suite, r.name, repr(r.lhs), repr(r.rhs), r.status, r.detail])
        res.report_path = path
    return res
