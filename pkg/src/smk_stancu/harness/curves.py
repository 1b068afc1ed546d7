"""Curve-data emission: operator values along an x-grid, one column per (operator, n)."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..basis import OperatorParams
from ..errors import ConfigError
from ..functions import builtin
from ..operators import apply
from .config import ExperimentConfig, GridSpec

__all__ = ["CurveData", "compute_curves", "emit_curves"]


@dataclass(frozen=True)
class CurveData:
    xs: np.ndarray
    f_values: np.ndarray
    columns: tuple  # ((label, values), ...)
    function: str


def _operators_of(config: ExperimentConfig):
    if config.operator == "both":
        return ("RL", "L")
    return (config.operator,)


def compute_curves(config: ExperimentConfig, grid: GridSpec = None) -> CurveData:
    grid = grid or config.grid
    if grid is None:
        raise ConfigError("curves need a grid (config key 'grid' or explicit argument)")
    f = builtin(config.function)
    xs = grid.points()
    cols = []
    for op in _operators_of(config):
        phi, psi = (0.0, 0.0) if op == "L" else (config.phi, config.psi)
        for n in config.ns:
            beta = config.beta(n)
            alpha = config.alpha_rule.resolve(n, beta)
            params = OperatorParams(alpha, phi, psi, beta)
            vals = np.array([apply(params, f, float(x), config.truncation) for x in xs])
            cols.append((f"{op}_n={n}", vals))
    return CurveData(xs, np.asarray(f.eval(xs), dtype=float), tuple(cols), config.function)


def emit_curves(config: ExperimentConfig, out_path, grid: GridSpec = None, fmt: str = "csv"):
    """Write the curve CSV: header x, f, then one column per (operator, n)."""
    data = compute_curves(config, grid)
    delim = "\t" if fmt == "tsv" else ","
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter=delim, lineterminator="\n")
        w.writerow(["x", "f"] + [label for label, _ in data.columns])
        for i in range(len(data.xs)):
            row = [repr(float(data.xs[i])), repr(float(data.f_values[i]))]
            row += [repr(float(vals[i])) for _, vals in data.columns]
            w.writerow(row)
    return path, data
