"""Command-line interface.

Exit codes: 0 success, 2 invariant violation, 3 config error, 4 truncation failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from ..basis import OperatorParams, TruncationPolicy
from ..bounds import bv_rate_bound, gruss_residual, voronovskaya_residual
from ..errors import ConfigError, DomainError, SMKError, TruncationFailure, UnknownFunction
from ..functions import builtin
from ..moments import moment_report, phi2_growth_constant
from ..operators import apply
from .config import load_config
from .curves import emit_curves
from .suites import SUITE_NAMES, run_suite
from .tables import format_matrix, run_table, write_table_csv

__all__ = ["main"]

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_CONFIG = 3
EXIT_TRUNCATION = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are config errors (exit 3)
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _add_param_flags(p, need_beta=True):
    p.add_argument("--alpha", type=float, default=None, help="shape parameter (default 1/beta)")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--psi", type=float, default=0.0)
    p.add_argument("--beta", type=float, required=need_beta)
    p.add_argument("--mass-tol", type=float, default=1e-12)
    p.add_argument("--max-terms", type=int, default=1_000_000)


def _params(args) -> OperatorParams:
    alpha = args.alpha if args.alpha is not None else 1.0 / args.beta
    return OperatorParams(alpha, args.phi, args.psi, args.beta)


def _policy(args) -> TruncationPolicy:
    return TruncationPolicy(mass_tol=args.mass_tol, max_terms=args.max_terms)


def _betas(text: str):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ConfigError(f"bad --betas {text!r}: {e}") from e
    if not vals:
        raise ConfigError("--betas must be a nonempty comma list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smk-stancu", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("eval", help="evaluate the operator at one point")
    _add_param_flags(q)
    q.add_argument("--function", required=True)
    q.add_argument("--x", type=float, required=True)

    q = sub.add_parser("moments", help="raw/central moments: closed forms vs series oracle")
    _add_param_flags(q)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--out", type=Path, default=None)
    q.add_argument("--format", choices=("csv", "tsv"), default="csv")

    q = sub.add_parser("table", help="compute a convergence table from a config")
    q.add_argument("--config", type=Path, required=True)
    q.add_argument("--reference", default="none", help="reference table 1..5 or 'none'")
    q.add_argument("--out", type=Path, default=None)
    q.add_argument("--format", choices=("csv", "tsv"), default="csv")
    q.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True,
                   help="render a PNG next to the output (default: on)")

    q = sub.add_parser("curves", help="emit curve data along an x-grid from a config")
    q.add_argument("--config", type=Path, required=True)
    q.add_argument("--out", type=Path, default=None)
    q.add_argument("--format", choices=("csv", "tsv"), default="csv")
    q.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)

    q = sub.add_parser("bounds", help="run an invariant suite")
    q.add_argument("--suite", choices=SUITE_NAMES, default="all")
    q.add_argument("--out", type=Path, default=None)
    q.add_argument("--format", choices=("csv", "tsv"), default="csv")
    q.add_argument("--mutate-phi2", type=float, default=None, help=argparse.SUPPRESS)

    q = sub.add_parser("asymptotic", help="scaled-residual ladder vs the two candidate limits")
    q.add_argument("--function", required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--betas", default="100,1000,10000")
    q.add_argument("--phi", type=float, default=0.0)
    q.add_argument("--psi", type=float, default=0.0)
    q.add_argument("--out", type=Path, default=None)
    q.add_argument("--plot", action=argparse.BooleanOptionalAction, default=False)

    q = sub.add_parser("gruss", help="covariance-defect ladder for a function pair")
    q.add_argument("--f", required=True)
    q.add_argument("--g", required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--betas", default="100,1000,10000")
    q.add_argument("--phi", type=float, default=0.0)
    q.add_argument("--psi", type=float, default=0.0)
    q.add_argument("--out", type=Path, default=None)

    q = sub.add_parser("bv", help="bounded-variation rate bound at one point")
    _add_param_flags(q)
    q.add_argument("--function", required=True)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--M", type=float, default=None, help="growth constant (default: empirical scan)")
    return p


def _cmd_eval(args) -> int:
    value = apply(_params(args), builtin(args.function), args.x, _policy(args))
    print(repr(value))
    return EXIT_OK


def _cmd_moments(args) -> int:
    params, policy = _params(args), _policy(args)
    rows = []
    for r in range(4):
        rows.append(moment_report(params, args.x, "raw", r, policy))
    for m in range(1, 7):
        rows.append(moment_report(params, args.x, "central", m, policy))
    for rep in rows:
        closed = "" if rep.closed_form is None else repr(rep.closed_form)
        disc = "" if rep.abs_discrepancy is None else repr(rep.abs_discrepancy)
        print(f"{rep.kind}[{rep.order}] closed={closed or 'n/a'} oracle={rep.oracle!r} |diff|={disc or 'n/a'}")
    if args.out:
        delim = "\t" if args.format == "tsv" else ","
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with args.out.open("w", newline="") as fh:
            w = csv.writer(fh, delimiter=delim, lineterminator="\n")
            w.writerow(["kind", "order", "closed_form", "oracle", "abs_discrepancy"])
            for rep in rows:
                w.writerow([
                    rep.kind, rep.order,
                    "" if rep.closed_form is None else repr(rep.closed_form),
                    repr(rep.oracle),
                    "" if rep.abs_discrepancy is None else repr(rep.abs_discrepancy),
                ])
        print(f"wrote {args.out}")
    return EXIT_OK


def _reference_arg(text):
    if text == "none":
        return None
    try:
        n = int(text)
    except ValueError as e:
        raise ConfigError(f"--reference must be 1..5 or 'none', got {text!r}") from e
    if n not in (1, 2, 3, 4, 5):
        raise ConfigError(f"--reference must be 1..5 or 'none', got {n}")
    return n


def _cmd_table(args) -> int:
    config = load_config(args.config)
    result = run_table(config, _reference_arg(args.reference))
    out = args.out or (Path(config.output) if config.output else Path("table.csv"))
    write_table_csv(result, out, args.format)
    print(format_matrix(result))
    print(f"wrote {out}")
    if args.plot:
        from .plots import render_table

        png = render_table(result, out.with_suffix(".png"))
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_curves(args) -> int:
    config = load_config(args.config)
    out = args.out or (Path(config.output) if config.output else Path("curves.csv"))
    path, data = emit_curves(config, out, fmt=args.format)
    print(f"wrote {path} ({len(data.xs)} rows, {2 + len(data.columns)} columns)")
    if args.plot:
        from .plots import render_curves

        png = render_curves(data, path.with_suffix(".png"))
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    out = args.out or Path(f"suite_{args.suite}_report.csv")
    res = run_suite(args.suite, out_path=out, fmt=args.format,
                    phi2_mutation=args.mutate_phi2, workdir=out.parent)
    fails = 0
    for r in res.records:
        if r.status == "fail":
            fails += 1
        print(f"[{r.status.upper():4}] {r.suite}/{r.name}: lhs={r.lhs:.6g} rhs={r.rhs:.6g}"
              + (f" ({r.detail})" if r.detail and r.status != "pass" else ""))
    print(f"report: {res.report_path}; {fails} failure(s) in {len(res.records)} checks")
    return res.exit_code


def _cmd_asymptotic(args) -> int:
    rep = voronovskaya_residual(builtin(args.function), args.x, args.phi, args.psi, _betas(args.betas))
    for beta, r in rep.points:
        print(f"beta={beta:g}\tresidual={r!r}")
    print(f"limit_consistent={rep.limit_consistent!r} limit_published={rep.limit_published!r} "
          f"approaches={rep.approaches}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with args.out.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["beta", "residual", "limit_consistent", "limit_published"])
            for beta, r in rep.points:
                w.writerow([repr(beta), repr(r), repr(rep.limit_consistent), repr(rep.limit_published)])
        print(f"wrote {args.out}")
    if args.plot:
        from .plots import render_residuals

        png = Path(args.out).with_suffix(".png") if args.out else Path("asymptotic.png")
        render_residuals([b for b, _ in rep.points], [r for _, r in rep.points],
                         {"consistent": rep.limit_consistent, "published": rep.limit_published}, png)
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_gruss(args) -> int:
    rep = gruss_residual(builtin(args.f), builtin(args.g), args.x, args.phi, args.psi, _betas(args.betas))
    for beta, r in rep.points:
        print(f"beta={beta:g}\tresidual={r!r}")
    print(f"limit={rep.limit!r}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with args.out.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["beta", "residual", "limit"])
            for beta, r in rep.points:
                w.writerow([repr(beta), repr(r), repr(rep.limit)])
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_bv(args) -> int:
    M = args.M if args.M is not None else phi2_growth_constant()[0]
    rep = bv_rate_bound(_params(args), builtin(args.function), args.x, M, _policy(args))
    print(f"lhs=|R f - f(x)| = {rep.lhs!r}")
    for key in ("term_mean", "term_jump", "term_var_left", "term_var_right", "term_near"):
        print(f"{key} = {rep.context[key]!r}")
    print(f"rhs = {rep.rhs!r} (M={M!r}) satisfied={rep.satisfied}")
    return EXIT_OK if rep.satisfied else EXIT_VIOLATION


_COMMANDS = {
    "eval": _cmd_eval,
    "moments": _cmd_moments,
    "table": _cmd_table,
    "curves": _cmd_curves,
    "bounds": _cmd_bounds,
    "asymptotic": _cmd_asymptotic,
    "gruss": _cmd_gruss,
    "bv": _cmd_bv,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except TruncationFailure as e:
        print(f"truncation failure: {e}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (DomainError, UnknownFunction, SMKError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
