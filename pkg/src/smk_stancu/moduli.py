"""Numerical moduli of smoothness, the Steklov mean, and related sups.

The mathematical definitions take sups over all x >= 0; numerically the sup is
restricted to [0, domain_cap] on an x-grid of spacing grid_step, and every
shift ladder is refined so small deltas stay resolved.  All estimates are
lower bounds of the capped sup that converge as the grid refines; consumers
must evaluate left-hand sides on the same capped domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .functions import FunctionSpec
from .operators import QuadratureRule, DEFAULT_QUAD

__all__ = [
    "ModulusConfig",
    "DEFAULT_MODULUS",
    "omega",
    "omega2",
    "steklov",
    "lipschitz_maximal",
    "weighted_modulus",
]

_N_SHIFTS = 16  # rungs of the h-ladder per modulus evaluation


@dataclass(frozen=True)
class ModulusConfig:
    domain_cap: float = 10.0
    grid_step: float = 1e-3

    def __post_init__(self):
        if self.domain_cap <= 0 or self.grid_step <= 0:
            raise ValueError("domain_cap and grid_step must be positive")
        if self.grid_step >= self.domain_cap:
            raise ValueError("grid_step must be smaller than domain_cap")

    def grid(self) -> np.ndarray:
        n = int(round(self.domain_cap / self.grid_step))
        return np.linspace(0.0, self.domain_cap, n + 1)


DEFAULT_MODULUS = ModulusConfig()

Func = Union[FunctionSpec, Callable]


def _fn(f: Func) -> Callable:
    return f.eval if isinstance(f, FunctionSpec) else f


def _shifts(delta: float) -> np.ndarray:
    return delta * np.arange(1, _N_SHIFTS + 1) / _N_SHIFTS


def omega(f: Func, delta: float, cfg: ModulusConfig = DEFAULT_MODULUS) -> float:
    """First modulus of continuity: sup |f(s) - f(t)| over |s - t| <= delta."""
    if delta <= 0:
        return 0.0
    fn = _fn(f)
    xs = cfg.grid()
    vals = fn(xs)
    best = 0.0
    for h in _shifts(delta):
        keep = xs <= cfg.domain_cap - h
        if not np.any(keep):
            continue
        best = max(best, float(np.max(np.abs(fn(xs[keep] + h) - vals[keep]))))
    return best


def omega2(f: Func, delta: float, cfg: ModulusConfig = DEFAULT_MODULUS) -> float:
    """Second modulus: sup |f(c+h) - 2 f(c) + f(c-h)| over h <= delta."""
    if delta <= 0:
        return 0.0
    fn = _fn(f)
    xs = cfg.grid()
    vals = fn(xs)
    best = 0.0
    for h in _shifts(delta):
        keep = (xs >= h) & (xs <= cfg.domain_cap - h)
        if not np.any(keep):
            continue
        second = fn(xs[keep] + h) - 2.0 * vals[keep] + fn(xs[keep] - h)
        best = max(best, float(np.max(np.abs(second))))
    return best


def steklov(f: Func, h: float, x: float, quad: QuadratureRule = DEFAULT_QUAD) -> float:
    """Steklov mean f_h(x) = (4/h^2) * double integral over [0, h/2]^2 of
    2 f(x+u+v) - f(x + 2(u+v))."""
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    fn = _fn(f)
    nodes, wts = quad.nodes()
    u = h / 4.0 * (nodes + 1.0)  # [-1,1] -> [0, h/2]
    w = h / 4.0 * wts
    s = u[:, None] + u[None, :]
    integrand = 2.0 * fn(x + s) - fn(x + 2.0 * s)
    return float(4.0 / h**2 * (w @ integrand @ w))


def lipschitz_maximal(
    f: Func, x: float, j: float, cfg: ModulusConfig = DEFAULT_MODULUS
) -> float:
    """Lipschitz maximal function of order j: sup over t != x of |f(t)-f(x)| / |t-x|^j."""
    if not 0 < j <= 1:
        raise ValueError(f"j must be in (0, 1], got {j}")
    fn = _fn(f)
    xs = cfg.grid()
    gap = np.abs(xs - x)
    keep = gap > cfg.grid_step / 2.0
    ratios = np.abs(fn(xs[keep]) - float(fn(x))) / gap[keep] ** j
    return float(np.max(ratios))


def weighted_modulus(f: Func, delta: float, cfg: ModulusConfig = DEFAULT_MODULUS) -> float:
    """Quadratic-weight modulus: sup over h <= delta, x of
    |f(x+h) - f(x)| / ((1 + h^2)(1 + x^2))."""
    if delta <= 0:
        return 0.0
    fn = _fn(f)
    xs = cfg.grid()
    vals = fn(xs)
    best = 0.0
    for h in _shifts(delta):
        keep = xs <= cfg.domain_cap - h
        if not np.any(keep):
            continue
        num = np.abs(fn(xs[keep] + h) - vals[keep])
        best = max(best, float(np.max(num / ((1.0 + h**2) * (1.0 + xs[keep] ** 2)))))
    return best
