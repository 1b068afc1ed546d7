"""Experiment harness: configs, tables, curves, invariant suites, CLI."""

from .config import AlphaRule, ExperimentConfig, GridSpec, load_config
from .curves import CurveData, compute_curves, emit_curves
from .suites import CheckRecord, SuiteResult, run_suite
from .tables import TableResult, run_table, table_config, write_table_csv

__all__ = [
    "AlphaRule",
    "ExperimentConfig",
    "GridSpec",
    "load_config",
    "CurveData",
    "compute_curves",
    "emit_curves",
    "CheckRecord",
    "SuiteResult",
    "run_suite",
    "TableResult",
    "run_table",
    "table_config",
    "write_table_csv",
]
