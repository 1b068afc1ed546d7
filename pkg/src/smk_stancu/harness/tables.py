"""Convergence-table computation and delimited output."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ..basis import OperatorParams
from ..errors import ConfigError
from ..functions import builtin
from ..operators import apply
from .config import AlphaRule, ExperimentConfig
from .reference_tables import REFERENCE_TABLES, ReferenceTable

__all__ = ["TableResult", "run_table", "table_config", "write_table_csv"]

_ABSENT_EPS = 1e-12


@dataclass(frozen=True)
class TableResult:
    row_kind: str
    col_kind: str
    row_labels: tuple
    col_labels: tuple
    values: np.ndarray  # NaN marks absent cells
    statistic: str
    reference: Optional[np.ndarray] = None
    abs_dev: Optional[np.ndarray] = None

    def max_abs_dev(self, *, skip=()) -> float:
        """Largest |computed - reference| over present cells, skipping (row, col) labels."""
        if self.abs_dev is None:
            raise ValueError("no reference attached")
        worst = 0.0
        for i, r in enumerate(self.row_labels):
            for j, c in enumerate(self.col_labels):
                d = self.abs_dev[i, j]
                if np.isnan(d) or (r, c) in skip:
                    continue
                worst = max(worst, float(d))
        return worst


def _statistic(value: float, stat: str, x: float, fx: float) -> float:
    if stat == "value":
        return value
    if stat == "shifted_value":
        return value - x
    return abs(value - fx)


def run_table(config: ExperimentConfig, reference: Optional[int] = None) -> TableResult:
    """Evaluate the table of the config; cells with alpha > 1/beta are absent.

    Layouts: an alpha ladder in the config makes rows = ns and columns = the
    ladder (xs must then be a single point); otherwise rows = xs, columns = ns.
    """
    if config.operator == "both":
        raise ConfigError("tables need a single operator; use 'RL' or 'L'")
    f = builtin(config.function)
    phi, psi = (0.0, 0.0) if config.operator == "L" else (config.phi, config.psi)

    ref_table: Optional[ReferenceTable] = None
    if reference is not None:
        ref_table = REFERENCE_TABLES[reference]

    if config.alpha_rule.is_ladder:
        if len(config.xs) != 1:
            raise ConfigError("an alpha-ladder table needs exactly one x")
        x = config.xs[0]
        fx = float(f.eval(x))
        rows = tuple(config.ns)
        cols = config.alpha_rule.ladder()
        values = np.full((len(rows), len(cols)), np.nan)
        for i, n in enumerate(rows):
            beta = config.beta(n)
            for j, col in enumerate(cols):
                alpha = config.alpha_rule.resolve(n, beta, column=col)
                if alpha > 1.0 / beta + _ABSENT_EPS:
                    continue
                v = apply(OperatorParams(alpha, phi, psi, beta), f, x, config.truncation)
                values[i, j] = _statistic(v, config.statistic, x, fx)
        row_kind, col_kind = "n", "alpha"
    else:
        rows = tuple(config.xs)
        cols = tuple(config.ns)
        values = np.full((len(rows), len(cols)), np.nan)
        for j, n in enumerate(cols):
            beta = config.beta(n)
            alpha = config.alpha_rule.resolve(n, beta)
            if alpha > 1.0 / beta + _ABSENT_EPS:
                continue
            params = OperatorParams(alpha, phi, psi, beta)
            for i, x in enumerate(rows):
                v = apply(params, f, x, config.truncation)
                values[i, j] = _statistic(v, config.statistic, x, float(f.eval(x)))
        row_kind, col_kind = "x", "n"

    ref_matrix = abs_dev = None
    if ref_table is not None:
        if len(ref_table.rows) != len(rows) or len(ref_table.cols) != len(cols):
            raise ConfigError(
                f"reference table {reference} is {len(ref_table.rows)}x{len(ref_table.cols)}, "
                f"config produces {len(rows)}x{len(cols)}"
            )
        ref_matrix = np.array(
            [[np.nan if v is None else v for v in row] for row in ref_table.values]
        )
        abs_dev = np.abs(values - ref_matrix)

    return TableResult(row_kind, col_kind, rows, cols, values, config.statistic, ref_matrix, abs_dev)


def table_config(number: int) -> ExperimentConfig:
    """Canonical configs reproducing reference tables 1-5."""
    if number in (1, 2):
        return ExperimentConfig(
            operator="RL" if number == 1 else "L",
            function="exp",
            alpha_rule=AlphaRule("fixed", value=1 / 50),
            phi=0.1 if number == 1 else 0.0,
            psi=0.9 if number == 1 else 0.0,
            xs=(0.1, 0.5, 0.9, 1.0),
            ns=(5, 10, 20, 30, 40, 50),
            statistic="shifted_value",
        )
    if number in (3, 4):
        return ExperimentConfig(
            operator="RL" if number == 3 else "L",
            function="exp",
            alpha_rule=AlphaRule(
                "fixed",
                value=(1 / 5, 1 / 10, 1 / 20, 1 / 30, 1 / 50, 1 / 100, 1 / 150, 1 / 200, 1 / 250, 1 / 500),
            ),
            phi=0.1 if number == 3 else 0.0,
            psi=0.9 if number == 3 else 0.0,
            xs=(0.1,),
            ns=(5, 10, 15, 20),
            statistic="shifted_value",
        )
    if number == 5:
        return ExperimentConfig(
            operator="RL",
            function="exp",
            alpha_rule=AlphaRule(
                "one_over",
                expr=("n", "n+1", "n^2-n+1", "n^2", "n^2+1/2", "n^2+n+1", "(n+1)^2"),
            ),
            phi=0.1,
            psi=0.9,
            xs=(0.5,),
            ns=(15, 25, 30, 50, 100, 200),
            statistic="abs_error",
        )
    raise ConfigError(f"no canonical table {number}")


def _fmt(v) -> str:
    if v is None or (isinstance(v, float) and np.isnan(v)):
        return ""
    return repr(float(v))


def write_table_csv(result: TableResult, path, fmt: str = "csv"):
    """Long-format rows: row_label,col_label,value,reference,abs_dev."""
    delim = "\t" if fmt == "tsv" else ","
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter=delim, lineterminator="\n")
        w.writerow(["row_label", "col_label", "value", "reference", "abs_dev"])
        for i, r in enumerate(result.row_labels):
            for j, c in enumerate(result.col_labels):
                ref = result.reference[i, j] if result.reference is not None else None
                dev = result.abs_dev[i, j] if result.abs_dev is not None else None
                w.writerow([r, c, _fmt(result.values[i, j]), _fmt(ref), _fmt(dev)])
    return path


def format_matrix(result: TableResult) -> str:
    """Human-readable wide view for stdout."""
    head = [f"{result.row_kind}\\{result.col_kind}"] + [str(c) for c in result.col_labels]
    lines = ["\t".join(head)]
    for i, r in enumerate(result.row_labels):
        cells = [
            "-" if np.isnan(result.values[i, j]) else f"{result.values[i, j]:.6f}"
            for j in range(len(result.col_labels))
        ]
        lines.append("\t".join([str(r)] + cells))
    return "\n".join(lines)
