"""Parameter families and real-line descriptions of the measures.

Covers the three-parameter free gamma family mu(t, theta, lam), the
Marchenko-Pastur laws, their reversed (reciprocal) versions, the free beta
prime family, and the compound-Poisson-type Levy densities.  Every family is
exposed both as plain density functions and as a ``SpectralMeasure`` (atom at
zero + absolutely continuous density + compact support).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import (
    DomainError,
    InvalidParameterError,
    NotUnimodalError,
    QuadratureError,
)

__all__ = [
    "GFGParams",
    "MPParams",
    "FreeMeixnerParams",
    "SupportInterval",
    "SpectralMeasure",
    "support",
    "atom_mass",
    "mode",
    "structural_predicates",
    "gfg_density",
    "mp_density",
    "inverse_mp_density",
    "levy_gfg_density",
    "fbp_density",
    "fbp_to_gfg_params",
    "gfg_measure",
    "mp_measure",
    "inverse_mp_measure",
    "endpoint_sum_product",
]


@dataclass(frozen=True)
class GFGParams:
    """Parameter triple (t, theta, lam) of the generalized free gamma family.

    t > 0 is the time/shape parameter, theta > 0 the scale, lam >= 1 the rate.
    """

    t: float
    theta: float
    lam: float

    def __post_init__(self):
        if not (self.t > 0):
            raise InvalidParameterError(f"t must be positive, got {self.t}")
        if not (self.theta > 0):
            raise InvalidParameterError(f"theta must be positive, got {self.theta}")
        if not (self.lam >= 1):
            raise InvalidParameterError(f"lam must be >= 1, got {self.lam}")

    @property
    def atomless(self) -> bool:
        return self.lam <= 1 + self.t / self.theta

    @property
    def unimodal(self) -> bool:
        return self.lam <= 1 + self.t / self.theta

    @property
    def freely_selfdecomposable(self) -> bool:
        return self.lam == 1

    @property
    def density_bounded(self) -> bool:
        return self.lam != 1 + self.t / self.theta


@dataclass(frozen=True)
class MPParams:
    """Marchenko-Pastur law with scale theta > 0 and shape lam > 0."""

    theta: float
    lam: float

    def __post_init__(self):
        if not (self.theta > 0):
            raise InvalidParameterError(f"theta must be positive, got {self.theta}")
        if not (self.lam > 0):
            raise InvalidParameterError(f"lam must be positive, got {self.lam}")

    @property
    def atom0(self) -> float:
        return max(0.0, 1.0 - self.lam)

    @property
    def edges(self) -> "SupportInterval":
        th, lam = self.theta, self.lam
        s = math.sqrt(lam)
        return SupportInterval(th * (s - 1) ** 2, th * (s + 1) ** 2)


@dataclass(frozen=True)
class FreeMeixnerParams:
    """Centered free Meixner triple (s, a, b) with s >= 0 and b >= -1."""

    s: float
    a: float
    b: float

    def __post_init__(self):
        if not (self.s >= 0):
            raise InvalidParameterError(f"s must be >= 0, got {self.s}")
        if not (self.b >= -1):
            raise InvalidParameterError(f"b must be >= -1, got {self.b}")


@dataclass(frozen=True)
class SupportInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise InvalidParameterError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class SpectralMeasure:
    """Atom at zero plus an absolutely continuous part on a compact interval."""

    atom0: float
    density: Callable[[float], float]
    support: SupportInterval
    label: str = field(default="", compare=False)
    cdf_fn: Callable[[float], float] | None = field(default=None, compare=False)

    def cdf(self, x: float, tol: float = 1e-8) -> float:
        """Right-continuous distribution function, atom at zero included."""
        if self.cdf_fn is not None:
            return self.cdf_fn(x)
        lo, hi = self.support.lo, self.support.hi
        out = self.atom0 if x >= 0 else 0.0
        if x <= lo:
            return out
        upper = min(x, hi)
        val, err = _edge_quad(self.density, lo, hi, upper)
        if err > max(tol, 1e-8 * max(1.0, abs(val))):
            raise QuadratureError(
                f"cdf quadrature error {err:.2e} above tolerance", estimate=err
            )
        return min(out + val, 1.0)

    def total_mass(self) -> float:
        return self.cdf(self.support.hi + 1.0)

    def mean(self) -> float:
        lo, hi = self.support.lo, self.support.hi
        val, _ = _edge_quad(lambda x: x * self.density(x), lo, hi, hi)
        return val

    def moment(self, n: int) -> float:
        lo, hi = self.support.lo, self.support.hi
        val, _ = _edge_quad(lambda x: x**n * self.density(x), lo, hi, hi)
        return val

    def quantile(self, q: float, tol: float = 1e-10) -> float:
        """Generalized inverse of the cdf on [0, 1]."""
        if not (0.0 <= q <= 1.0):
            raise DomainError(f"quantile level {q} outside [0, 1]")
        if q <= self.atom0:
            return 0.0
        from scipy.optimize import brentq

        lo, hi = self.support.lo, self.support.hi
        if q >= self.cdf(hi):
            return hi
        return brentq(lambda x: self.cdf(x, tol=1e-8) - q, lo, hi, xtol=1e-12)

    def dilate(self, c: float) -> "SpectralMeasure":
        """Pushforward under x -> c*x for c > 0."""
        if not (c > 0):
            raise DomainError("dilation factor must be positive")
        f = self.density
        base_cdf = self.cdf_fn
        return SpectralMeasure(
            atom0=self.atom0,
            density=lambda x, f=f, c=c: f(x / c) / c,
            support=SupportInterval(c * self.support.lo, c * self.support.hi),
            label=f"D_{c}({self.label})" if self.label else "",
            cdf_fn=None if base_cdf is None else (lambda x: base_cdf(x / c)),
        )


def _edge_quad(f, lo, hi, upper):
    """Integrate f over [lo, upper] with the arcsin substitution that absorbs
    square-root vanishing at both edges of [lo, hi]."""
    if upper <= lo:
        return 0.0, 0.0
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    if half == 0.0:
        return 0.0, 0.0
    s = np.clip((min(upper, hi) - mid) / half, -1.0, 1.0)
    u_hi = math.asin(s)

    def g(u):
        x = mid + half * math.sin(u)
        return f(x) * half * math.cos(u)

    import warnings

    with warnings.catch_warnings():
        # the returned error estimate is checked by callers; the warning about
        # hitting the subdivision cap on the partial-interval case is noise
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(g, -math.pi / 2, u_hi, limit=300, epsabs=1e-11, epsrel=1e-11)
    return val, err


# ---------------------------------------------------------------------------
# closed-form supports, atoms, densities
# ---------------------------------------------------------------------------

def support(p: GFGParams) -> SupportInterval:
    """Edges theta*(lam+1)+t +/- 2*sqrt(theta*lam*(theta+t)) of the a.c. part."""
    t, th, lam = p.t, p.theta, p.lam
    c = th * (lam + 1) + t
    r = 2.0 * math.sqrt(th * lam * (th + t))
    lo = c - r
    # lam = 1 + t/theta makes theta*lam*(theta+t) a perfect square; clamp the
    # rounding residue so the lower edge is exactly 0 there.
    if lo < 0 or abs(lo) < 4e-16 * c:
        lo = 0.0
    return SupportInterval(lo, c + r)


def endpoint_sum_product(p: GFGParams) -> tuple[Fraction, Fraction]:
    """Exact sum and product of the support edges, valid for rational params."""
    t, th, lam = Fraction(p.t), Fraction(p.theta), Fraction(p.lam)
    return 2 * (th * (lam + 1) + t), (th * (lam - 1) - t) ** 2


def atom_mass(p: GFGParams) -> float:
    """Mass at zero: 1 - t/(theta*(lam-1)) once lam exceeds 1 + t/theta."""
    if p.lam <= 1 + p.t / p.theta:
        return 0.0
    return 1.0 - p.t / (p.theta * (p.lam - 1))


def gfg_density(p: GFGParams, x: float) -> float:
    """Absolutely continuous density of mu(t, theta, lam)."""
    sup = support(p)
    if not (sup.lo < x < sup.hi):
        return 0.0
    t, th, lam = p.t, p.theta, p.lam
    num = t * math.sqrt((x - sup.lo) * (sup.hi - x))
    den = 2.0 * math.pi * th * x * (x + t * (lam - 1))
    return num / den


def mp_density(q: MPParams, x: float) -> float:
    """Marchenko-Pastur density k_{theta,lam}."""
    e = q.edges
    if not (e.lo < x < e.hi):
        return 0.0
    return math.sqrt((e.hi - x) * (x - e.lo)) / (2.0 * math.pi * q.theta * x)


def inverse_mp_density(q: MPParams, x: float) -> float:
    """Density of the reciprocal pushforward of the MP law (needs lam >= 1)."""
    if q.lam < 1:
        raise InvalidParameterError(
            "reversal needs lam >= 1 so the MP law has no atom at zero"
        )
    if x <= 0:
        return 0.0
    return mp_density(q, 1.0 / x) / x**2


def levy_gfg_density(p: GFGParams, x: float) -> float:
    """Free Levy density t*k_{theta,lam}(x)/x of mu(t, theta, lam)."""
    if x <= 0:
        return 0.0
    return p.t * mp_density(MPParams(p.theta, p.lam), x) / x


def fbp_to_gfg_params(a: float, b: float) -> GFGParams:
    """Free beta prime (a, b) written in the (t, theta, lam) parametrization."""
    if not (a > 0 and b > 1):
        raise InvalidParameterError(f"free beta prime needs a > 0, b > 1; got {(a, b)}")
    return GFGParams(a / (b - 1), a / (b - 1) ** 2, (a + b - 1) / a)


def fbp_density(a: float, b: float, x: float) -> float:
    """Density of the free beta prime law with parameters a > 0, b > 1."""
    return gfg_density(fbp_to_gfg_params(a, b), x)


def mode(p: GFGParams, tol_factor: float = 1e-12) -> float:
    """Mode of the density in the unimodal regime lam <= 1 + t/theta."""
    t, th, lam = p.t, p.theta, p.lam
    boundary = 1 + t / th
    if lam > boundary:
        raise NotUnimodalError(
            f"mu({t}, {th}, {lam}) is not unimodal (lam > 1 + t/theta)"
        )
    if lam == boundary:
        return 0.0
    sup = support(p)
    a, b = sup.lo, sup.hi
    c1 = t * (lam - 1)

    def k(x):
        return (
            2 * x**3
            - 3 * (a + b) * x**2
            + (4 * a * b - c1 * (a + b)) * x
            + 2 * a * b * c1
        )

    # k is strictly decreasing on (a, b): plain bisection.
    lo, hi = a, b
    tol = tol_factor * (b - a)
    while hi - lo > tol:
        midp = 0.5 * (lo + hi)
        if k(midp) > 0:
            lo = midp
        else:
            hi = midp
    return 0.5 * (lo + hi)


def structural_predicates(p: GFGParams) -> dict:
    return {
        "freely_selfdecomposable": p.freely_selfdecomposable,
        "unimodal": p.unimodal,
        "density_bounded": p.density_bounded,
    }


# ---------------------------------------------------------------------------
# SpectralMeasure constructors
# ---------------------------------------------------------------------------

def gfg_measure(p: GFGParams) -> SpectralMeasure:
    return SpectralMeasure(
        atom0=atom_mass(p),
        density=lambda x, p=p: gfg_density(p, x),
        support=support(p),
        label=f"gfg({p.t},{p.theta},{p.lam})",
    )


def mp_measure(q: MPParams) -> SpectralMeasure:
    return SpectralMeasure(
        atom0=q.atom0,
        density=lambda x, q=q: mp_density(q, x),
        support=q.edges,
        label=f"mp({q.theta},{q.lam})",
    )


def inverse_mp_measure(q: MPParams) -> SpectralMeasure:
    if q.lam < 1:
        raise InvalidParameterError("reversal needs lam >= 1")
    e = q.edges
    base = mp_measure(q)

    def cdf_fn(x, base=base, e=e):
        # P(1/X <= x) = 1 - F_X(1/x^-); the MP law here is atomless on (0, inf)
        if x <= 1.0 / e.hi:
            return 0.0
        return 1.0 - base.cdf(1.0 / x)

    return SpectralMeasure(
        atom0=0.0,
        density=lambda x, q=q: inverse_mp_density(q, x),
        support=SupportInterval(1.0 / e.hi, 1.0 / e.lo if e.lo > 0 else math.inf),
        label=f"inverse_mp({q.theta},{q.lam})",
        cdf_fn=cdf_fn,
    )
