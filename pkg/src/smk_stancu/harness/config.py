"""Experiment configuration: JSON schema, validation, and rule resolution."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..basis import TruncationPolicy
from ..errors import ConfigError

__all__ = ["AlphaRule", "GridSpec", "ExperimentConfig", "load_config", "ALPHA_EXPRS"]

# accepted 1/expr(n) ladders; "n^2+1" covers the figure reading alpha = 1/(n^2 + 1)
ALPHA_EXPRS = {
    "n": lambda n: n,
    "n+1": lambda n: n + 1,
    "n^2-n+1": lambda n: n * n - n + 1,
    "n^2": lambda n: n * n,
    "n^2+1/2": lambda n: n * n + 0.5,
    "n^2+1": lambda n: n * n + 1,
    "n^2+n+1": lambda n: n * n + n + 1,
    "(n+1)^2": lambda n: (n + 1) * (n + 1),
}

_BETA_RULES = {"n": lambda n: float(n), "n^2": lambda n: float(n * n)}

_OPERATORS = ("RL", "L", "both")
_STATISTICS = ("value", "shifted_value", "abs_error")


@dataclass(frozen=True)
class AlphaRule:
    """How alpha is chosen per table column / curve: fixed value(s), 1/beta, or 1/expr(n).

    A list-valued ``value`` or ``expr`` declares an alpha ladder (table columns).
    """

    kind: str
    value: Union[float, tuple, None] = None
    expr: Union[str, tuple, None] = None

    def __post_init__(self):
        if self.kind not in ("fixed", "one_over_beta", "one_over"):
            raise ConfigError(f"unknown alpha_rule kind {self.kind!r}")
        if self.kind == "fixed":
            if self.value is None:
                raise ConfigError("alpha_rule 'fixed' needs a value")
            vals = self.value if isinstance(self.value, tuple) else (self.value,)
            if any(v < 0 for v in vals):
                raise ConfigError("alpha values must be >= 0")
        if self.kind == "one_over":
            if self.expr is None:
                raise ConfigError("alpha_rule 'one_over' needs an expr")
            exprs = self.expr if isinstance(self.expr, tuple) else (self.expr,)
            for e in exprs:
                if e not in ALPHA_EXPRS:
                    raise ConfigError(
                        f"unknown alpha expr {e!r}; known: {sorted(ALPHA_EXPRS)}"
                    )

    @property
    def is_ladder(self) -> bool:
        return isinstance(self.value, tuple) or isinstance(self.expr, tuple)

    def ladder(self) -> tuple:
        """Column descriptors: floats (fixed ladder) or expr strings."""
        if isinstance(self.value, tuple):
            return self.value
        if isinstance(self.expr, tuple):
            return self.expr
        raise ConfigError("alpha_rule is not a ladder")

    def resolve(self, n: int, beta: float, column=None) -> float:
        if self.kind == "one_over_beta":
            return 1.0 / beta
        if self.kind == "fixed":
            return float(column if column is not None else self.value)
        expr = column if column is not None else self.expr
        return 1.0 / ALPHA_EXPRS[expr](n)


@dataclass(frozen=True)
class GridSpec:
    """Uniform x-grid for curve emission."""

    x_min: float
    x_max: float
    step: float

    def __post_init__(self):
        if self.x_min < 0 or self.x_max <= self.x_min or self.step <= 0:
            raise ConfigError(f"invalid grid [{self.x_min}, {self.x_max}] step {self.step}")

    def points(self):
        import numpy as np

        n = int(round((self.x_max - self.x_min) / self.step))
        return np.linspace(self.x_min, self.x_max, n + 1)


@dataclass(frozen=True)
class ExperimentConfig:
    operator: str  # RL | L | both
    function: str
    alpha_rule: AlphaRule
    phi: float = 0.0
    psi: float = 0.0
    beta_rule: str = "n"
    xs: tuple = ()
    ns: tuple = ()
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)
    output: Optional[str] = None
    statistic: str = "value"  # value | shifted_value (value - x) | abs_error (|value - f(x)|)
    grid: Optional[GridSpec] = None

    def __post_init__(self):
        if self.operator not in _OPERATORS:
            raise ConfigError(f"operator must be one of {_OPERATORS}, got {self.operator!r}")
        if self.statistic not in _STATISTICS:
            raise ConfigError(f"statistic must be one of {_STATISTICS}, got {self.statistic!r}")
        if self.beta_rule not in _BETA_RULES:
            raise ConfigError(f"beta_rule must be one of {sorted(_BETA_RULES)}")
        if not self.ns:
            raise ConfigError("ns must be nonempty")
        if any(n < 1 for n in self.ns):
            raise ConfigError("every n must be >= 1")
        if not self.xs and self.grid is None:
            raise ConfigError("xs must be nonempty (or a grid must be given for curves)")
        if any(x < 0 for x in self.xs):
            raise ConfigError("every x must be >= 0")
        if self.phi < 0 or self.psi < 0 or self.phi > self.psi:
            raise ConfigError(f"need 0 <= phi <= psi, got phi={self.phi}, psi={self.psi}")

    def beta(self, n: int) -> float:
        return _BETA_RULES[self.beta_rule](n)


def _reject_unknown(obj: dict, allowed: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def _parse_alpha_rule(obj) -> AlphaRule:
    if not isinstance(obj, dict):
        raise ConfigError("alpha_rule must be an object")
    _reject_unknown(obj, {"kind", "value", "expr"}, "alpha_rule")
    value = obj.get("value")
    if isinstance(value, list):
        value = tuple(float(v) for v in value)
    elif value is not None:
        value = float(value)
    expr = obj.get("expr")
    if isinstance(expr, list):
        expr = tuple(expr)
    return AlphaRule(kind=obj.get("kind", ""), value=value, expr=expr)


def _parse_truncation(obj) -> TruncationPolicy:
    if obj is None:
        return TruncationPolicy()
    _reject_unknown(obj, {"mass_tol", "max_terms", "tail_guard"}, "truncation")
    base = TruncationPolicy()
    return TruncationPolicy(
        mass_tol=float(obj.get("mass_tol", base.mass_tol)),
        max_terms=int(obj.get("max_terms", base.max_terms)),
        tail_guard=int(obj.get("tail_guard", base.tail_guard)),
    )


def _parse_grid(obj) -> Optional[GridSpec]:
    if obj is None:
        return None
    _reject_unknown(obj, {"x_min", "x_max", "step"}, "grid")
    try:
        return GridSpec(float(obj["x_min"]), float(obj["x_max"]), float(obj["step"]))
    except KeyError as e:
        raise ConfigError(f"grid is missing {e.args[0]!r}") from e


_TOP_KEYS = {
    "operator",
    "function",
    "alpha_rule",
    "beta_rule",
    "phi",
    "psi",
    "xs",
    "ns",
    "truncation",
    "output",
    "statistic",
    "grid",
}


def config_from_dict(obj: dict) -> ExperimentConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown(obj, _TOP_KEYS, "config")
    for key in ("operator", "function", "alpha_rule"):
        if key not in obj:
            raise ConfigError(f"config is missing {key!r}")
    try:
        return ExperimentConfig(
            operator=obj["operator"],
            function=obj["function"],
            alpha_rule=_parse_alpha_rule(obj["alpha_rule"]),
            beta_rule=obj.get("beta_rule", "n"),
            phi=float(obj.get("phi", 0.0)),
            psi=float(obj.get("psi", 0.0)),
            xs=tuple(float(x) for x in obj.get("xs", [])),
            ns=tuple(int(n) for n in obj.get("ns", [])),
            truncation=_parse_truncation(obj.get("truncation")),
            output=obj.get("output"),
            statistic=obj.get("statistic", "value"),
            grid=_parse_grid(obj.get("grid")),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}") from e
    return config_from_dict(obj)
