"""Registry of test functions with exact derivative and variation data.

Each spec carries vectorized evaluation, analytic first and second
derivatives, a growth class (used to reject divergent series), and the
breakpoint lists that delimit monotone pieces of f and f'.  Total variation is
computed from those pieces rather than by sampling: the bounded-variation rate
bound stacks many nested variations over shrinking intervals, and sampling
noise would swamp the O(1/sqrt(beta)) terms being measured.

All built-ins are smooth; ``kink`` (t -> |t - 1|) is the one piecewise-linear
spec, included so the one-sided-derivative jump terms are exercised.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import MissingDerivative, MissingOneSided, UnknownFunction

__all__ = [
    "Growth",
    "FunctionSpec",
    "builtin",
    "builtin_names",
    "product_spec",
    "total_variation",
    "auxiliary_fx",
]


@dataclass(frozen=True)
class Growth:
    """Growth class: 'bounded', 'polynomial' (degree), or 'exponential' (rate)."""

    kind: str
    rate: float = 0.0

    def __post_init__(self):
        if self.kind not in ("bounded", "polynomial", "exponential"):
            raise ValueError(f"unknown growth kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    growth: Growth = Growth("bounded")
    poly_coeffs: Optional[tuple] = None
    # interior breakpoints of monotone pieces of f and of f' within (a, b)
    f_breaks: Callable[[float, float], list] = field(default=lambda a, b: [])
    d1_breaks: Callable[[float, float], list] = field(default=lambda a, b: [])
    kinks: tuple = ()  # points where f' jumps
    d1_plus: Optional[Callable] = None
    d1_minus: Optional[Callable] = None

    def __call__(self, t):
        return self.eval(t)

    def one_sided_d1(self, x: float) -> tuple:
        """(f'(x+), f'(x-)); equal wherever f' is continuous."""
        if self.d1 is None:
            raise MissingOneSided(f"{self.name} has no first derivative data")
        plus = self.d1_plus(x) if self.d1_plus is not None else float(self.d1(x))
        minus = self.d1_minus(x) if self.d1_minus is not None else float(self.d1(x))
        return float(plus), float(minus)


def _midpoints_of(points: Sequence[float], a: float, b: float) -> list:
    return sorted(p for p in points if a < p < b)


def _trig_breaks(offset: float):
    # solutions of t = offset + k*pi inside (a, b)
    def breaks(a: float, b: float) -> list:
        k0 = math.ceil((a - offset) / math.pi)
        out = []
        k = k0
        while offset + k * math.pi < b:
            p = offset + k * math.pi
            if p > a:
                out.append(p)
            k += 1
        return out

    return breaks


def _no_breaks(a: float, b: float) -> list:
    return []


def _make_registry() -> dict:
    reg = {}

    reg["const1"] = FunctionSpec(
        name="const1",
        eval=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        d1=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        growth=Growth("bounded"),
        poly_coeffs=(1.0,),
    )
    reg["identity"] = FunctionSpec(
        name="identity",
        eval=lambda t: np.asarray(t, dtype=float) + 0.0,
        d1=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        growth=Growth("polynomial", 1),
        poly_coeffs=(0.0, 1.0),
    )
    reg["exp"] = FunctionSpec(
        name="exp",
        eval=np.exp,
        d1=np.exp,
        d2=np.exp,
        growth=Growth("exponential", 1.0),
    )
    reg["sin"] = FunctionSpec(
        name="sin",
        eval=np.sin,
        d1=np.cos,
        d2=lambda t: -np.sin(np.asarray(t, dtype=float)),
        growth=Growth("bounded"),
        f_breaks=_trig_breaks(math.pi / 2),  # extrema of sin
        d1_breaks=_trig_breaks(0.0),  # extrema of cos
    )
    reg["cos"] = FunctionSpec(
        name="cos",
        eval=np.cos,
        d1=lambda t: -np.sin(np.asarray(t, dtype=float)),
        d2=lambda t: -np.cos(np.asarray(t, dtype=float)),
        growth=Growth("bounded"),
        f_breaks=_trig_breaks(0.0),
        d1_breaks=_trig_breaks(math.pi / 2),
    )

    # piecewise-linear hinge: f(t) = |t - 1|, derivative jumps -1 -> +1 at t = 1
    def _kink_eval(t):
        return np.abs(np.asarray(t, dtype=float) - 1.0)

    def _kink_d1(t):
        return np.where(np.asarray(t, dtype=float) >= 1.0, 1.0, -1.0)

    reg["kink"] = FunctionSpec(
        name="kink",
        eval=_kink_eval,
        d1=_kink_d1,
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        growth=Growth("polynomial", 1),
        f_breaks=lambda a, b: _midpoints_of([1.0], a, b),
        kinks=(1.0,),
        d1_plus=lambda x: 1.0 if x >= 1.0 else -1.0,
        d1_minus=lambda x: 1.0 if x > 1.0 else -1.0,
    )
    return reg


_REGISTRY = _make_registry()
_MONO_RE = re.compile(r"^monomial\((\d+)\)$")


def _monomial(r: int) -> FunctionSpec:
    if r == 0:
        return _REGISTRY["const1"]
    coeffs = tuple(0.0 if k < r else 1.0 for k in range(r + 1))
    return FunctionSpec(
        name=f"monomial({r})",
        eval=lambda t, r=r: np.asarray(t, dtype=float) ** r,
        d1=lambda t, r=r: r * np.asarray(t, dtype=float) ** (r - 1),
        d2=(lambda t, r=r: r * (r - 1) * np.asarray(t, dtype=float) ** max(r - 2, 0))
        if r >= 2
        else (lambda t: np.zeros_like(np.asarray(t, dtype=float))),
        growth=Growth("polynomial", r),
        poly_coeffs=coeffs,
        # on [0, inf) every monomial and its derivative are monotone
    )


_MONO_CACHE: dict = {}


def builtin(name: str) -> FunctionSpec:
    """Look up a registered test function by name.

    Names: const1, identity, sin, cos, exp, kink, monomial(r) for r in 0..6.
    """
    if name in _REGISTRY:
        return _REGISTRY[name]
    m = _MONO_RE.match(name)
    if m:
        r = int(m.group(1))
        if not 0 <= r <= 6:
            raise UnknownFunction(f"monomial order must be 0..6, got {r}")
        if r not in _MONO_CACHE:
            _MONO_CACHE[r] = _monomial(r)
        return _MONO_CACHE[r]
    raise UnknownFunction(
        f"{name!r}; known: {', '.join(builtin_names())}"
    )


def builtin_names() -> list:
    return sorted(_REGISTRY) + ["monomial(0)..monomial(6)"]


def product_spec(f: FunctionSpec, g: FunctionSpec) -> FunctionSpec:
    """Pointwise product f*g with product-rule derivatives (no variation data)."""
    if f.d1 is None or g.d1 is None or f.d2 is None or g.d2 is None:
        raise MissingDerivative("product_spec needs d1 and d2 on both factors")
    kinds = {f.growth.kind, g.growth.kind}
    if "exponential" in kinds:
        rate = (f.growth.rate if f.growth.kind == "exponential" else 0.0) + (
            g.growth.rate if g.growth.kind == "exponential" else 0.0
        )
        growth = Growth("exponential", rate)
    elif "polynomial" in kinds:
        growth = Growth("polynomial", f.growth.rate + g.growth.rate)
    else:
        growth = Growth("bounded")
    return FunctionSpec(
        name=f"{f.name}*{g.name}",
        eval=lambda t: f.eval(t) * g.eval(t),
        d1=lambda t: f.d1(t) * g.eval(t) + f.eval(t) * g.d1(t),
        d2=lambda t: f.d2(t) * g.eval(t) + 2.0 * f.d1(t) * g.d1(t) + f.eval(t) * g.d2(t),
        growth=growth,
    )


def _piece_variation(values: list) -> float:
    return float(sum(abs(values[k + 1] - values[k]) for k in range(len(values) - 1)))


def total_variation(spec: FunctionSpec, of: str, a: float, b: float) -> float:
    """Exact total variation of f or f' on [a, b] from declared monotone pieces.

    Endpoint values of f' are taken one-sided toward the interval interior, so
    a derivative jump sitting exactly on an endpoint is not counted.  That is
    the convention the bounded-variation rate bound needs: recentering f' by
    its one-sided limit at the evaluation point x only changes the value at x
    itself, and with interior-sided endpoints the recentered variation over
    [a, x] or [x, b] equals the plain variation computed here.
    """
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0
    if of == "f":
        pts = [a, *spec.f_breaks(a, b), b]
        return _piece_variation([float(spec.eval(p)) for p in pts])
    if of != "d1":
        raise ValueError(f"of must be 'f' or 'd1', got {of!r}")
    if spec.d1 is None:
        raise MissingDerivative(f"{spec.name} has no first derivative data")

    def side(p: float, which: str) -> float:
        if spec.d1_plus is None:
            return float(spec.d1(p))
        return float(spec.d1_plus(p)) if which == "+" else float(spec.d1_minus(p))

    interior = sorted(set(spec.d1_breaks(a, b)) | {k for k in spec.kinks if a < k < b})
    values = [side(a, "+")]
    for p in interior:
        if p in spec.kinks:
            values.extend([side(p, "-"), side(p, "+")])  # jump counted once
        else:
            values.append(float(spec.d1(p)))
    values.append(side(b, "-"))
    return _piece_variation(values)


def auxiliary_fx(spec: FunctionSpec, x: float, t):
    """Auxiliary recentering: f(t) - f(x-) below x, 0 at x, f(t) - f(x+) above.

    All registry functions are continuous, so f(x+) = f(x-) = f(x).
    """
    tt = np.asarray(t, dtype=float)
    fx = float(spec.eval(x))
    out = np.where(tt == x, 0.0, spec.eval(tt) - fx)
    return float(out) if np.isscalar(t) or out.ndim == 0 else out
