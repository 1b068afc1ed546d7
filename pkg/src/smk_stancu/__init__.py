"""Kantorovich-type Szász–Mirakjan operators with Stancu shifts.

Numerical evaluation of the operator family, closed-form and oracle moments,
moduli of smoothness, the classical error bounds and asymptotic residual
experiments, and a harness reproducing the reference convergence tables.
"""

from .basis import (
    DEFAULT_POLICY,
    OperatorParams,
    TruncationPolicy,
    WeightSequence,
    rising_factorial,
    weight,
    weight_sequence,
)
from .errors import (
    ConfigError,
    DomainError,
    MissingDerivative,
    MissingOneSided,
    SMKError,
    TruncationFailure,
    UnknownFunction,
    UnsupportedOrder,
)
from .functions import FunctionSpec, Growth, auxiliary_fx, builtin, product_spec, total_variation
from .moduli import DEFAULT_MODULUS, ModulusConfig, lipschitz_maximal, omega, omega2, steklov, weighted_modulus
from .moments import (
    AsymptoticLimits,
    MomentReport,
    asymptotic_limits,
    central_moment,
    central_moment_oracle,
    moment_report,
    phi2_growth_constant,
    raw_moment,
    raw_moment_oracle,
)
from .operators import DEFAULT_QUAD, KernelCDF, QuadratureRule, apply, apply_baseline, kernel_cdf
from .bounds import (
    BoundReport,
    GrussReport,
    VoronovskayaReport,
    WeightedImageReport,
    WeightedNormReport,
    bound_c1,
    bound_direct,
    bound_lipschitz_maximal,
    bound_lipschitz_space,
    bound_steklov,
    bv_rate_bound,
    fit_lipschitz_space_constant,
    gruss_residual,
    quantitative_voronovskaya,
    voronovskaya_residual,
    weighted_image_bound,
    weighted_norm_error,
)

__version__ = "0.1.0"
