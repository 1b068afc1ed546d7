"""Basis weights of the operator series.

The operator attaches to each index i >= 0 the weight

    l_i(x) = (1 + beta*alpha)^(-x/alpha) * (alpha + 1/beta)^(-i) * x^(i,-alpha) / i!

where x^(i,-alpha) = prod_{j=1..i} (x + (j-1)*alpha) is the rising-factorial
product (empty product = 1 at i = 0).  Writing x^(i,-alpha) = alpha^i * (x/alpha)_i
shows the weights are a negative-binomial mass function with success count
r = x/alpha and odds beta*alpha, so they are nonnegative and sum to one.  As
alpha -> 0 they converge to the Poisson weights e^(-beta*x) (beta*x)^i / i!,
which is the value used at alpha = 0 (direct substitution would be 0/0).

Weights are generated through the term recurrence

    w_{i+1} / w_i = (x + i*alpha) / ((i+1) * (alpha + 1/beta)),

accumulated in log space to avoid factorial overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationFailure

__all__ = [
    "OperatorParams",
    "TruncationPolicy",
    "WeightSequence",
    "DEFAULT_POLICY",
    "rising_factorial",
    "weight",
    "weight_sequence",
]


@dataclass(frozen=True)
class OperatorParams:
    """Parameter tuple (alpha, phi, psi, beta) of the operator family.

    alpha: shape parameter of the basis weights, >= 0 (0 selects the Poisson limit).
    phi, psi: Stancu shift and scale, 0 <= phi <= psi.
    beta: sequence value beta_n >= 1.
    """

    alpha: float
    phi: float
    psi: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha}")
        if self.phi < 0 or self.psi < 0:
            raise DomainError("phi and psi must be >= 0")
        if self.phi > self.psi:
            raise DomainError(f"need phi <= psi, got phi={self.phi} > psi={self.psi}")
        if self.beta < 1:
            raise DomainError(f"beta must be >= 1, got {self.beta}")

    def require_asymptotic(self):
        """Check alpha*beta <= 1, required wherever an asymptotic-regime result is used."""
        if self.alpha * self.beta > 1 + 1e-12:
            raise DomainError(
                f"asymptotic regime needs alpha <= 1/beta; got alpha*beta = {self.alpha * self.beta}"
            )


@dataclass(frozen=True)
class TruncationPolicy:
    """When to cut the infinite basis series.

    The series is stopped once the accumulated weight reaches 1 - mass_tol,
    then tail_guard extra terms are kept; max_terms is a hard cap.
    """

    mass_tol: float = 1e-12
    max_terms: int = 1_000_000
    tail_guard: int = 8

    def __post_init__(self):
        if not 0 < self.mass_tol < 1:
            raise DomainError(f"mass_tol must be in (0,1), got {self.mass_tol}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.tail_guard < 0:
            raise DomainError("tail_guard must be >= 0")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class WeightSequence:
    """Truncated weight sequence with its accumulated mass."""

    indices: np.ndarray
    weights: np.ndarray
    mass: float

    def __len__(self):
        return len(self.indices)


def rising_factorial(x: float, i: int, alpha: float) -> float:
    """prod_{j=1..i} (x + (j-1)*alpha); the empty product at i = 0 is 1."""
    if i < 0:
        raise DomainError(f"i must be a nonnegative integer, got {i}")
    if x < 0 or alpha < 0:
        raise DomainError("x and alpha must be >= 0")
    if i == 0:
        return 1.0
    return float(np.prod(x + alpha * np.arange(i, dtype=float)))


def _log_weights(params: OperatorParams, x: float, n_terms: int) -> np.ndarray:
    """Log-weights for indices 0..n_terms-1 via the cumulative recurrence (x > 0).

    Accumulated in extended precision: the partial sums pass through
    magnitudes ~ beta*x before cancelling back to O(1) in the bulk, and the
    weights must sum to 1 well below mass_tol, so float64 accumulation error
    (~ N * beta*x * eps) would be visible for beta*x beyond ~1e3.
    """
    alpha, beta = params.alpha, params.beta
    ld = np.longdouble
    if alpha == 0.0:
        # Poisson limit of (1 + beta*alpha)^(-x/alpha)
        log_w0 = -ld(beta) * ld(x)
    else:
        log_w0 = -(ld(x) / ld(alpha)) * np.log1p(ld(beta) * ld(alpha))
    k = np.arange(n_terms - 1, dtype=np.longdouble)
    incr = np.log(ld(x) + k * ld(alpha)) - np.log(k + 1.0) - np.log(ld(alpha) + 1.0 / ld(beta))
    out = np.empty(n_terms, dtype=np.longdouble)
    out[0] = log_w0
    out[1:] = log_w0 + np.cumsum(incr)
    return out.astype(np.float64)


def weight(params: OperatorParams, x: float, i: int) -> float:
    """The i-th basis weight l_i(x)."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if i < 0:
        raise DomainError(f"i must be >= 0, got {i}")
    if x == 0.0:
        return 1.0 if i == 0 else 0.0
    return float(np.exp(_log_weights(params, x, i + 1)[i]))


def weight_sequence(
    params: OperatorParams, x: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> WeightSequence:
    """Weights 0..N truncated per the policy.

    Raises TruncationFailure when max_terms is reached before the accumulated
    mass passes 1 - mass_tol (heavy-tailed regimes with large alpha*beta).
    """
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x == 0.0:
        return WeightSequence(np.array([0]), np.array([1.0]), 1.0)

    alpha, beta = params.alpha, params.beta
    mean = beta * x
    sd = math.sqrt(beta * x * (1.0 + beta * alpha))
    n = int(min(max(64, mean + 12.0 * sd + 32.0), policy.max_terms))
    target = 1.0 - policy.mass_tol
    while True:
        w = np.exp(_log_weights(params, x, n))
        cum = np.cumsum(w, dtype=np.longdouble)  # criterion needs sub-mass_tol accuracy
        hit = int(np.searchsorted(cum, target))
        if hit < n:
            stop = hit + 1 + policy.tail_guard
            if stop <= n or n >= policy.max_terms:
                w = w[: min(stop, n)]
                return WeightSequence(np.arange(len(w)), w, math.fsum(w))
        elif n >= policy.max_terms:
            raise TruncationFailure(
                f"mass {float(cum[-1]):.17g} < {target:.17g} after {n} terms "
                f"(alpha={alpha}, beta={beta}, x={x})",
                mass=float(cum[-1]),
                terms=n,
            )
        n = int(min(max(2 * n, hit + 1 + policy.tail_guard if hit < n else 0), policy.max_terms))
