"""Evaluation of the Kantorovich-type operators and their kernel CDF.

The Stancu-shifted operator averages f over the cells

    [(i + phi) / (beta + psi), (i + 1 + phi) / (beta + psi)],   i = 0, 1, ...

with the basis weights of :mod:`smk_stancu.basis`:

    R(f; x) = (beta + psi) * sum_i l_i(x) * integral of f over cell_i.

The baseline operator is the phi = psi = 0 special case.  Cell integrals are
exact (antiderivative) for polynomial function specs and composite
Gauss-Legendre otherwise; cells shrink like 1/beta, so a modest fixed order is
far below double-precision noise for the smooth registry functions.

The kernel CDF J(x, y) is the mass of the operator's integral kernel up to y:
piecewise linear in y, increasing from 0 to the (truncated) total mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import DEFAULT_POLICY, OperatorParams, TruncationPolicy, WeightSequence, weight_sequence
from .errors import DomainError
from .functions import FunctionSpec

__all__ = ["QuadratureRule", "DEFAULT_QUAD", "KernelCDF", "apply", "apply_baseline", "kernel_cdf"]


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre node count per cell; exact through degree 2*order - 1."""

    order: int = 8

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"quadrature order must be >= 1, got {self.order}")

    def nodes(self):
        return _leggauss(self.order)


@lru_cache(maxsize=None)
def _leggauss(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


DEFAULT_QUAD = QuadratureRule(8)


def _cells(params: OperatorParams, indices: np.ndarray):
    scale = params.beta + params.psi
    lo = (indices + params.phi) / scale
    hi = (indices + 1.0 + params.phi) / scale
    return lo, hi


def _check_convergent(params: OperatorParams, f: FunctionSpec):
    # Exponential growth e^(A t) turns the weight tail into a geometric series
    # with ratio (beta*alpha / (1 + beta*alpha)) * e^(A / (beta + psi)).
    if f.growth.kind != "exponential":
        return
    a = params.beta * params.alpha
    ratio = a / (1.0 + a) * np.exp(f.growth.rate / (params.beta + params.psi))
    if ratio >= 1.0:
        raise DomainError(
            f"series for {f.name} diverges at alpha={params.alpha}, beta={params.beta}: "
            f"tail ratio {ratio:.6g} >= 1"
        )


def _cell_integrals(
    f: FunctionSpec, lo: np.ndarray, hi: np.ndarray, quad: QuadratureRule
) -> np.ndarray:
    if f.poly_coeffs is not None:
        # exact antiderivative of sum c_k t^k
        anti = np.zeros(len(f.poly_coeffs) + 1)
        anti[1:] = np.asarray(f.poly_coeffs, dtype=float) / np.arange(1, len(f.poly_coeffs) + 1)
        return np.polynomial.polynomial.polyval(hi, anti) - np.polynomial.polynomial.polyval(lo, anti)
    nodes, wts = quad.nodes()
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    samples = mid[:, None] + half[:, None] * nodes[None, :]
    vals = np.asarray(f.eval(samples), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"{f.name} is undefined or non-finite on a visited cell")
    return half * (vals @ wts)


def apply(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> float:
    """Operator value R(f; x)."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    _check_convergent(params, f)
    seq = weight_sequence(params, x, policy)
    lo, hi = _cells(params, seq.indices)
    ints = _cell_integrals(f, lo, hi, quad)
    return float((params.beta + params.psi) * (seq.weights @ ints))


def apply_baseline(
    alpha: float,
    beta: float,
    f: FunctionSpec,
    x: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> float:
    """Baseline operator (no Stancu shift): apply with phi = psi = 0."""
    return apply(OperatorParams(alpha, 0.0, 0.0, beta), f, x, policy, quad)


def kernel_cdf(
    params: OperatorParams, x: float, y: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Kernel mass up to y: J(x, y) = (beta + psi) * sum_i l_i(x) * |cell_i intersect [0, y]|."""
    return KernelCDF(params, x, policy)(y)


class KernelCDF:
    """Cumulative kernel mass J(x, .) with a fixed truncated weight sequence."""

    def __init__(self, params: OperatorParams, x: float, policy: TruncationPolicy = DEFAULT_POLICY):
        if x < 0:
            raise DomainError(f"x must be >= 0, got {x}")
        self.params = params
        self.x = x
        self._seq: WeightSequence = weight_sequence(params, x, policy)
        self._lo, self._hi = _cells(params, self._seq.indices)

    def __call__(self, y: float) -> float:
        if y < 0:
            raise DomainError(f"y must be >= 0, got {y}")
        overlap = np.clip(np.minimum(self._hi, y) - self._lo, 0.0, None)
        return float((self.params.beta + self.params.psi) * (self._seq.weights @ overlap))

    @property
    def total_mass(self) -> float:
        return self._seq.mass
