"""Closed-form raw and central moments, asymptotic limits, and a series oracle.

Raw moments come from the negative-binomial factorial moments
E[i(i-1)...(i-k+1)] = (x/alpha)(x/alpha + 1)...(x/alpha + k - 1) * (beta*alpha)^k
combined with the exact cell integrals of t^r; the published closed forms for
r <= 3 reproduce that derivation term by term.  The published third central
moment does not: its beta^2 coefficient reads 6*x*alpha*(3 + 2*phi + 2*x*psi)
where the expansion gives ... - 2*x*psi.  It is kept verbatim here
(``central_moment``), and the series oracle is authoritative; the moments
suite logs the discrepancy whenever alpha > 0 and psi > 0.

The oracle integrates (t - x)^m or t^r exactly over every retained cell, so it
is limited only by the truncation mass and is available up to order 6, which
the closed forms never cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basis import DEFAULT_POLICY, OperatorParams, TruncationPolicy, weight_sequence
from .errors import UnsupportedOrder

__all__ = [
    "MomentReport",
    "AsymptoticLimits",
    "raw_moment",
    "central_moment",
    "raw_moment_oracle",
    "central_moment_oracle",
    "moment_report",
    "asymptotic_limits",
    "phi2_growth_constant",
]

# mutation hook for the negative-control suite: scales the Phi_2 closed form
_PHI2_SCALE = 1.0


def raw_moment(params: OperatorParams, x: float, r: int) -> float:
    """Closed-form R(t^r; x) for r in 0..3."""
    a, phi, psi, b = params.alpha, params.phi, params.psi, params.beta
    s = psi + b
    if r == 0:
        return 1.0
    if r == 1:
        return (1.0 + 2.0 * phi + 2.0 * x * b) / (2.0 * s)
    if r == 2:
        num = (
            1.0
            + 3.0 * phi
            + 3.0 * phi**2
            + 6.0 * x * b
            + 6.0 * x * phi * b
            + 3.0 * a * x * b**2
            + 3.0 * x**2 * b**2
        )
        return num / (3.0 * s**2)
    if r == 3:
        num = (
            1.0
            + 4.0 * phi
            + 6.0 * phi**2
            + 4.0 * phi**3
            + 2.0 * x * (7.0 + 12.0 * phi + 6.0 * phi**2) * b
            + 6.0 * x * (x + a) * (3.0 + 2.0 * phi) * b**2
            + 4.0 * x * (x**2 + 3.0 * x * a + 2.0 * a**2) * b**3
        )
        return num / (4.0 * s**3)
    raise UnsupportedOrder(f"no closed form for raw moment r={r}; use raw_moment_oracle")


def central_moment(params: OperatorParams, x: float, m: int) -> float:
    """Closed-form central moment Phi_m(x) = R((t-x)^m; x) for m in 1..3.

    m = 3 is the published expression kept verbatim; see the module docstring
    for its known sign defect (oracle is authoritative).
    """
    a, phi, psi, b = params.alpha, params.phi, params.psi, params.beta
    s = psi + b
    if m == 1:
        return (1.0 + 2.0 * phi - 2.0 * x * psi) / (2.0 * s)
    if m == 2:
        num = (
            1.0
            + 3.0 * phi
            + 3.0 * phi**2
            - 3.0 * x * psi
            - 6.0 * x * phi * psi
            + 3.0 * x**2 * psi**2
            + 3.0 * x * b
            + 3.0 * x * a * b**2
        )
        return _PHI2_SCALE * num / (3.0 * s**2)
    if m == 3:
        num = (
            1.0
            + 4.0 * phi**3
            - 4.0 * x * psi
            + 6.0 * x**2 * psi**2
            - 4.0 * x**3 * psi**3
            + phi**2 * (6.0 - 12.0 * x * psi)
            + 4.0 * phi * (1.0 - 3.0 * x * psi + 3.0 * x**2 * psi**2)
            + 2.0 * x * (5.0 + 6.0 * phi - 6.0 * x * psi) * b
            + 6.0 * x * a * (3.0 + 2.0 * phi + 2.0 * x * psi) * b**2
            + 8.0 * x * a**2 * b**3
        )
        return num / (4.0 * s**3)
    raise UnsupportedOrder(f"no closed form for central moment m={m}; use central_moment_oracle")


def _moment_sum(params: OperatorParams, x: float, shift: float, order: int, policy) -> float:
    """(beta+psi) * sum_i w_i * integral over cell_i of (t - shift)^order, exactly."""
    seq = weight_sequence(params, x, policy)
    scale = params.beta + params.psi
    lo = (seq.indices + params.phi) / scale - shift
    hi = (seq.indices + 1.0 + params.phi) / scale - shift
    cell = (hi ** (order + 1) - lo ** (order + 1)) / (order + 1)
    return float(scale * (seq.weights @ cell))


def raw_moment_oracle(
    params: OperatorParams, x: float, r: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Series-summation R(t^r; x), exact up to truncation mass (r <= 6)."""
    if not 0 <= r <= 6:
        raise UnsupportedOrder(f"oracle supports r in 0..6, got {r}")
    return _moment_sum(params, x, 0.0, r, policy)


def central_moment_oracle(
    params: OperatorParams, x: float, m: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """Series-summation Phi_m(x), exact up to truncation mass (m <= 6)."""
    if not 1 <= m <= 6:
        raise UnsupportedOrder(f"oracle supports m in 1..6, got {m}")
    return _moment_sum(params, x, x, m, policy)


@dataclass(frozen=True)
class MomentReport:
    """Closed form vs series oracle for one moment order."""

    kind: str  # "raw" or "central"
    order: int
    closed_form: Optional[float]
    oracle: float
    abs_discrepancy: Optional[float]


def moment_report(
    params: OperatorParams,
    x: float,
    kind: str,
    order: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> MomentReport:
    if kind == "raw":
        oracle = raw_moment_oracle(params, x, order, policy)
        closed = raw_moment(params, x, order) if order <= 3 else None
    elif kind == "central":
        oracle = central_moment_oracle(params, x, order, policy)
        closed = central_moment(params, x, order) if order <= 3 else None
    else:
        raise ValueError(f"kind must be 'raw' or 'central', got {kind!r}")
    disc = None if closed is None else abs(closed - oracle)
    return MomentReport(kind, order, closed, oracle, disc)


@dataclass(frozen=True)
class AsymptoticLimits:
    """Limits at alpha = 1/beta as beta grows."""

    phi1: float  # lim beta   * Phi_1 = 1/2 - x*psi + phi
    phi2: float  # lim beta   * Phi_2 = 2 x
    phi4: float  # lim beta^2 * Phi_4 = 12 x^2
    phi6: float  # lim beta^3 * Phi_6 = 120 x^3


def asymptotic_limits(x: float, phi: float, psi: float) -> AsymptoticLimits:
    return AsymptoticLimits(
        phi1=0.5 - x * psi + phi,
        phi2=2.0 * x,
        phi4=12.0 * x**2,
        phi6=120.0 * x**3,
    )


def phi2_growth_constant(
    xs=None, betas=(10.0, 100.0, 1000.0, 10000.0), pairs=((0.0, 0.0), (0.1, 0.3), (0.1, 0.9))
):
    """Empirical M with Phi_2 <= M (1+x)^2 / (beta + psi) over the scan grid.

    Scanned at the extremal alpha = 1/beta; returns (M, argmax context dict).
    """
    if xs is None:
        xs = np.linspace(0.0, 10.0, 201)
    best = 0.0
    where = {}
    for beta in betas:
        for phi, psi in pairs:
            p = OperatorParams(1.0 / beta, phi, psi, beta)
            vals = np.array([central_moment(p, float(x), 2) for x in xs])
            ratio = vals * (beta + psi) / (1.0 + np.asarray(xs)) ** 2
            k = int(np.argmax(ratio))
            if ratio[k] > best:
                best = float(ratio[k])
                where = {"x": float(xs[k]), "beta": beta, "phi": phi, "psi": psi}
    return best, where
