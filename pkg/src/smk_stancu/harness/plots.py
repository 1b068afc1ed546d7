"""Figure rendering for the report paths (PNG files next to the CSV output)."""

from __future__ import annotations

from pathlib import Path

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .curves import CurveData  # noqa: E402
from .tables import TableResult  # noqa: E402

__all__ = ["render_curves", "render_table", "render_residuals"]


def render_curves(data: CurveData, out_path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(data.xs, data.f_values, "k-", lw=2.0, label=f"f = {data.function}")
    for label, vals in data.columns:
        ax.plot(data.xs, vals, lw=1.0, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_table(result: TableResult, out_path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 5))
    cols = np.arange(len(result.col_labels))
    for i, r in enumerate(result.row_labels):
        ax.plot(cols, result.values[i], "o-", ms=4, label=f"{result.row_kind} = {r}")
        if result.reference is not None:
            ax.plot(cols, result.reference[i], "k--", lw=0.7, alpha=0.6)
    ax.set_xticks(cols)
    ax.set_xticklabels([str(c) for c in result.col_labels], rotation=45, fontsize=7)
    ax.set_xlabel(result.col_kind)
    ax.set_ylabel(result.statistic)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_residuals(betas, residuals, limits: dict, out_path, ylabel="scaled residual") -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(betas, residuals, "o-", label="measured")
    for name, value in limits.items():
        ax.axhline(value, ls="--", lw=1.0, alpha=0.7, label=name)
    ax.set_xlabel("beta")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path
