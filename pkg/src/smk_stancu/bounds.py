"""Right-hand sides of the approximation error bounds, plus residual ladders.

Every ``bound_*`` function returns a :class:`BoundReport` pairing the measured
left side |R(f; x) - f(x)| (or a scaled residual) with the theorem's assembled
right side.  Existential constants are handled two ways:

* the second-moment growth constant M (Phi_2 <= M (1+x)^2 / (beta+psi)) is the
  empirical grid maximum from :func:`smk_stancu.moments.phi2_growth_constant`;
* the direct-bound constant M_1 and the quantitative-asymptotic constant C are
  fitted from the measurements themselves and reported for stability checks,
  since the underlying statements only assert existence.

The first-order asymptotic expansion is handled as an experiment rather than a
bound: ``voronovskaya_residual`` reports the ladder beta * (R(f;x) - f(x))
together with two candidate limits, (1/2 - x psi + phi) f' + 2x f'' as
published and (1/2 - x psi + phi) f' + x f'' as forced by the second-moment
limit beta*Phi_2 -> 2x (the residual sequence arbitrates; the published 2x f''
coefficient is inconsistent with that limit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import DEFAULT_POLICY, OperatorParams, TruncationPolicy
from .errors import DomainError, MissingDerivative
from .functions import FunctionSpec, product_spec, total_variation
from .moduli import DEFAULT_MODULUS, ModulusConfig, lipschitz_maximal, omega, omega2, weighted_modulus
from .moments import central_moment
from .operators import DEFAULT_QUAD, QuadratureRule, apply

__all__ = [
    "BoundReport",
    "VoronovskayaReport",
    "GrussReport",
    "WeightedNormReport",
    "WeightedImageReport",
    "bound_steklov",
    "bound_c1",
    "bound_lipschitz_maximal",
    "bound_lipschitz_space",
    "fit_lipschitz_space_constant",
    "bound_direct",
    "voronovskaya_residual",
    "quantitative_voronovskaya",
    "gruss_residual",
    "bv_rate_bound",
    "weighted_norm_error",
    "weighted_image_bound",
]

_SLACK = 1e-12  # satisfied means lhs <= rhs + _SLACK


@dataclass(frozen=True)
class BoundReport:
    name: str
    lhs: float
    rhs: float
    satisfied: bool
    context: dict = field(default_factory=dict)


def _report(name, lhs, rhs, params, f, x, **extras) -> BoundReport:
    ctx = {
        "alpha": params.alpha,
        "phi": params.phi,
        "psi": params.psi,
        "beta": params.beta,
        "x": x,
        "f": f.name if isinstance(f, FunctionSpec) else str(f),
    }
    ctx.update(extras)
    return BoundReport(name, float(lhs), float(rhs), bool(lhs <= rhs + _SLACK), ctx)


def _lhs_error(params, f, x, policy, quad):
    return abs(apply(params, f, x, policy, quad) - float(f.eval(x)))


def bound_steklov(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Steklov-mean bound: |R f - f| <= 5 omega(f, d) + 6.5 omega2(f, d), d = sqrt(Phi_2)."""
    d = math.sqrt(central_moment(params, x, 2))
    rhs = 5.0 * omega(f, d, cfg) + 6.5 * omega2(f, d, cfg)
    return _report("steklov", _lhs_error(params, f, x, policy, quad), rhs, params, f, x, delta=d)


def bound_c1(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """C^1 bound: |f'(x)| (1 + 2 phi + 2 x psi) / (2 (psi + beta)) + 2 d omega(f', d).

    The first-term numerator is +2 x psi as published (a looser majorant of
    2 |Phi_1| (psi + beta), whose numerator carries -2 x psi).
    """
    if f.d1 is None:
        raise MissingDerivative(f"{f.name} has no first derivative")
    d = math.sqrt(central_moment(params, x, 2))
    first = abs(float(f.d1(x))) * abs(1.0 + 2.0 * params.phi + 2.0 * x * params.psi) / (
        2.0 * (params.psi + params.beta)
    )
    rhs = first + 2.0 * d * omega(f.d1, d, cfg)
    return _report("c1", _lhs_error(params, f, x, policy, quad), rhs, params, f, x, delta=d)


def bound_lipschitz_maximal(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    j: float,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Lipschitz-maximal bound: |R f - f| <= varpi_j(f, x) * Phi_2^(j/2)."""
    phi2 = central_moment(params, x, 2)
    rhs = lipschitz_maximal(f, x, j, cfg) * phi2 ** (j / 2.0)
    return _report(
        "lipschitz_maximal", _lhs_error(params, f, x, policy, quad), rhs, params, f, x, j=j
    )


def fit_lipschitz_space_constant(
    f: FunctionSpec,
    j: float,
    nu1: float,
    nu2: float,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    step: float = 0.01,
) -> float:
    """Smallest M with |f(y)-f(x)| <= M |y-x|^j / (y + nu1 x^2 + nu2 x)^(j/2) on the cap."""
    ts = np.arange(0.0, cfg.domain_cap + step / 2.0, step)
    vals = np.asarray(f.eval(ts), dtype=float)
    ys = ts[None, :]
    xs = ts[:, None]
    gap = np.abs(ys - xs)
    num = np.abs(vals[None, :] - vals[:, None]) * (ys + nu1 * xs**2 + nu2 * xs) ** (j / 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(gap > 0, num / gap**j, 0.0)
    return float(np.max(ratio))


def bound_lipschitz_space(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    j: float,
    nu1: float,
    nu2: float,
    M_f: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Lipschitz-space bound: |R f - f| <= M_f (Phi_2 / (x (nu1 x + nu2)))^(j/2), x > 0."""
    if x <= 0:
        raise DomainError("the Lipschitz-space bound needs x > 0")
    if nu1 < 0 or nu2 < 0 or (nu1 == 0 and nu2 == 0):
        raise DomainError("nu1, nu2 must be >= 0 and not both zero")
    phi2 = central_moment(params, x, 2)
    rhs = M_f * (phi2 / (x * (nu1 * x + nu2))) ** (j / 2.0)
    return _report(
        "lipschitz_space",
        _lhs_error(params, f, x, policy, quad),
        rhs,
        params,
        f,
        x,
        j=j,
        nu1=nu1,
        nu2=nu2,
        M_f=M_f,
    )


def bound_direct(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Direct (K-functional) bound: |R f - f| <= M_1 omega2(f, sqrt(gamma)) + omega(f, eta).

    gamma = Phi_2 + Phi_1^2 and eta = |Phi_1|.  M_1 is existential; the report
    uses M_1 = 1 and carries the smallest M_1 that would close the inequality
    at this point (``m1_required``; 0 when the omega term alone suffices).
    """
    phi1 = central_moment(params, x, 1)
    gamma = central_moment(params, x, 2) + phi1**2
    eta = abs(phi1)
    om2 = omega2(f, math.sqrt(gamma), cfg)
    om = omega(f, eta, cfg)
    lhs = _lhs_error(params, f, x, policy, quad)
    if om2 > 1e-14:
        m1 = max(0.0, lhs - om) / om2
    else:
        m1 = 0.0 if lhs <= om + _SLACK else math.inf
    return _report(
        "direct",
        lhs,
        om2 + om,  # rhs at M_1 = 1
        params,
        f,
        x,
        gamma_n=gamma,
        eta_n=eta,
        omega2_term=om2,
        omega_term=om,
        m1_required=m1,
    )


@dataclass(frozen=True)
class VoronovskayaReport:
    """Residual ladder beta (R f - f) against the two candidate limits."""

    f: str
    x: float
    phi: float
    psi: float
    points: tuple  # ((beta, residual), ...)
    limit_published: float  # ... + 2x f''
    limit_consistent: float  # ... + x f'' (forced by beta*Phi_2 -> 2x)
    approaches: str  # "consistent" | "published" | "inconclusive"


def voronovskaya_residual(
    f: FunctionSpec,
    x: float,
    phi: float,
    psi: float,
    betas: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> VoronovskayaReport:
    """Scaled residuals at alpha = 1/beta along a beta ladder."""
    if f.d1 is None or f.d2 is None:
        raise MissingDerivative(f"{f.name} needs d1 and d2")
    fx = float(f.eval(x))
    pts = []
    for beta in betas:
        p = OperatorParams(1.0 / beta, phi, psi, beta)
        p.require_asymptotic()
        pts.append((float(beta), beta * (apply(p, f, x, policy, quad) - fx)))
    head = (0.5 - x * psi + phi) * float(f.d1(x))
    lim_pub = head + 2.0 * x * float(f.d2(x))
    lim_con = head + x * float(f.d2(x))
    last = pts[-1][1]
    d_pub, d_con = abs(last - lim_pub), abs(last - lim_con)
    if abs(lim_pub - lim_con) < 1e-12:
        approaches = "consistent"  # the candidates coincide (f'' = 0 or x = 0)
    elif d_con < 0.5 * d_pub:
        approaches = "consistent"
    elif d_pub < 0.5 * d_con:
        approaches = "published"
    else:
        approaches = "inconclusive"
    return VoronovskayaReport(f.name, x, phi, psi, tuple(pts), lim_pub, lim_con, approaches)


def quantitative_voronovskaya(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    fitted_c: float = 1.0,
    cfg: ModulusConfig = DEFAULT_MODULUS,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Quantitative asymptotic: beta |R f - f - f' Phi_1 - f''/2 Phi_2| vs C * Delta(f'', 1/sqrt(beta)).

    C is existential; ``ratio`` in the context is lhs / Delta-term, the
    smallest admissible C at this point (0 when both vanish).
    """
    if f.d1 is None or f.d2 is None:
        raise MissingDerivative(f"{f.name} needs d1 and d2")
    beta = params.beta
    phi1 = central_moment(params, x, 1)
    phi2 = central_moment(params, x, 2)
    expansion = float(f.eval(x)) + float(f.d1(x)) * phi1 + 0.5 * float(f.d2(x)) * phi2
    lhs = beta * abs(apply(params, f, x, policy, quad) - expansion)
    delta_term = weighted_modulus(f.d2, math.sqrt(1.0 / beta), cfg)
    ratio = lhs / delta_term if delta_term > 1e-300 else (0.0 if lhs <= 1e-9 else math.inf)
    return _report(
        "quantitative_voronovskaya",
        lhs,
        fitted_c * delta_term,
        params,
        f,
        x,
        delta_term=delta_term,
        ratio=ratio,
        fitted_c=fitted_c,
    )


@dataclass(frozen=True)
class GrussReport:
    """Covariance-defect ladder beta (R(fg) - R(f) R(g)) and its limit 2x f'(x) g'(x)."""

    f: str
    g: str
    x: float
    phi: float
    psi: float
    points: tuple
    limit: float


def gruss_residual(
    f: FunctionSpec,
    g: FunctionSpec,
    x: float,
    phi: float,
    psi: float,
    betas: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> GrussReport:
    if f.d1 is None or g.d1 is None:
        raise MissingDerivative("gruss_residual needs d1 on both functions")
    fg = product_spec(f, g)
    pts = []
    for beta in betas:
        p = OperatorParams(1.0 / beta, phi, psi, beta)
        p.require_asymptotic()
        defect = apply(p, fg, x, policy, quad) - apply(p, f, x, policy, quad) * apply(
            p, g, x, policy, quad
        )
        pts.append((float(beta), beta * defect))
    limit = 2.0 * x * float(f.d1(x)) * float(g.d1(x))
    return GrussReport(f.name, g.name, x, phi, psi, tuple(pts), limit)


def bv_rate_bound(
    params: OperatorParams,
    f: FunctionSpec,
    x: float,
    M: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    quad: QuadratureRule = DEFAULT_QUAD,
) -> BoundReport:
    """Bounded-variation rate bound at x > 0 with empirical growth constant M.

    rhs =   1/4 |f'(x+) + f'(x-)| |1 + 2 phi - 2 x psi| / (psi + beta)
          + 1/2 |f'(x+) - f'(x-)| sqrt(M / (beta + psi)) (1 + x)
          + M (1+x)^2 / (x (beta + psi)) * sum_{l=1..floor(sqrt(beta))} V(x - x/l, x)
          + x / sqrt(beta) * [V(x - x/sqrt(beta), x) + V(x, x + x/sqrt(beta))]
          + M (1+x)^2 / (x (beta + psi)) * sum_{r=1..floor(sqrt(beta))} V(x, x + x/r)

    where V(a, b) is the total variation of the recentered derivative on [a, b].
    """
    if x <= 0:
        raise DomainError("the bounded-variation bound needs x > 0")
    d_plus, d_minus = f.one_sided_d1(x)
    beta, phi, psi = params.beta, params.phi, params.psi
    root = math.sqrt(beta)
    L = int(math.floor(root))

    t_mean = 0.25 * abs(d_plus + d_minus) * abs(1.0 + 2.0 * phi - 2.0 * x * psi) / (psi + beta)
    t_jump = 0.5 * abs(d_plus - d_minus) * math.sqrt(M / (beta + psi)) * (1.0 + x)
    var_left = sum(total_variation(f, "d1", x - x / l, x) for l in range(1, L + 1))
    var_right = sum(total_variation(f, "d1", x, x + x / r) for r in range(1, L + 1))
    coef = M * (1.0 + x) ** 2 / (x * (beta + psi))
    t_near = (x / root) * (
        total_variation(f, "d1", x - x / root, x) + total_variation(f, "d1", x, x + x / root)
    )
    rhs = t_mean + t_jump + coef * (var_left + var_right) + t_near
    return _report(
        "bv_rate",
        _lhs_error(params, f, x, policy, quad),
        rhs,
        params,
        f,
        x,
        M=M,
        term_mean=t_mean,
        term_jump=t_jump,
        term_var_left=coef * var_left,
        term_var_right=coef * var_right,
        term_near=t_near,
    )


@dataclass(frozen=True)
class WeightedNormReport:
    r: int
    measured_sup: float
    closed_bound: float
    satisfied: bool


def weighted_norm_error(
    params: OperatorParams, r: int, cfg: ModulusConfig = DEFAULT_MODULUS
) -> WeightedNormReport:
    """sup over the capped grid of |R(t^r; x) - x^r| / (1 + x^2), r in {1, 2},
    against the closed upper bounds assembled from the moment forms."""
    from .moments import raw_moment

    if r not in (1, 2):
        raise DomainError(f"r must be 1 or 2, got {r}")
    a, phi, psi, b = params.alpha, params.phi, params.psi, params.beta
    xs = cfg.grid()
    vals = np.array([abs(raw_moment(params, float(x), r) - x**r) for x in xs])
    measured = float(np.max(vals / (1.0 + xs**2)))
    if r == 1:
        # sup 1/(1+x^2) = 1, sup x/(1+x^2) = 1/2
        bound = (1.0 + 2.0 * phi) / (2.0 * (psi + b)) + (psi / (psi + b)) * 0.5
    else:
        bound = (
            (1.0 + 3.0 * phi + 3.0 * phi**2) / (3.0 * (psi + b) ** 2)
            + (2.0 * b + 2.0 * phi * b + a * b**2) / (2.0 * (psi + b) ** 2)
            + (psi**2 + 2.0 * b * psi) / (psi + b) ** 2
        )
    return WeightedNormReport(r, measured, float(bound), measured <= bound + _SLACK)


@dataclass(frozen=True)
class WeightedImageReport:
    measured_sup: float
    kappa: float
    bound: float  # 2 + kappa
    satisfied: bool


def weighted_image_bound(
    params: OperatorParams, cfg: ModulusConfig = DEFAULT_MODULUS
) -> WeightedImageReport:
    """sup over the capped grid of R(1 + t^2; x) / (1 + x^2) against 2 + kappa,
    kappa = (2 beta + beta^2 alpha + 2 beta phi) / (beta + psi)^2."""
    from .moments import raw_moment

    a, phi, psi, b = params.alpha, params.phi, params.psi, params.beta
    xs = cfg.grid()
    vals = np.array([1.0 + raw_moment(params, float(x), 2) for x in xs])
    measured = float(np.max(vals / (1.0 + xs**2)))
    kappa = (2.0 * b + b**2 * a + 2.0 * b * phi) / (b + psi) ** 2
    return WeightedImageReport(measured, float(kappa), 2.0 + kappa, measured <= 2.0 + kappa + _SLACK)
