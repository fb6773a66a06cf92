"""Cauchy, R and S transforms with the branch convention arg in (0, 2*pi).

All closed forms follow the square-root convention sqrt(w) = |w|^(1/2) *
exp(i*arg(w)/2) with arg(w) in (0, 2*pi); on the positive real axis (the cut)
the boundary value from the upper half-plane is used, so principal_sqrt(4) = 2.
R-transforms are evaluated on the lower half-plane or on small real
neighborhoods of zero, where the branch is fixed by R(z) ~ (first cumulant)*z.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy.optimize import brentq

from .errors import DomainError, NonConvergenceError
from .measures import (
    GFGParams,
    MPParams,
    FreeMeixnerParams,
    SpectralMeasure,
    atom_mass,
    fbp_to_gfg_params,
    support,
    _edge_quad,
)

__all__ = [
    "TransformGrid",
    "principal_sqrt",
    "cauchy_transform",
    "meixner_cauchy",
    "stieltjes_invert",
    "r_gfg",
    "r_mp",
    "r_bdlp",
    "r_free_beta",
    "r_inverse_gfg",
    "s_gfg",
    "s_mp",
    "s_inverse_mp",
    "s_fbp",
    "s_free_beta",
    "s_reversed",
    "numeric_s_transform",
    "functional_identity_rs",
]


@dataclass(frozen=True)
class TransformGrid:
    """Evaluation points together with the region they are supposed to lie in."""

    points: tuple
    region: str  # "upper-half-plane", "negative-real-segment", "lower-half-plane"

    def __post_init__(self):
        checks = {
            "upper-half-plane": lambda z: complex(z).imag > 0,
            "negative-real-segment": lambda z: complex(z).imag == 0
            and complex(z).real < 0,
            "lower-half-plane": lambda z: complex(z).imag < 0,
        }
        if self.region not in checks:
            raise DomainError(f"unknown region tag {self.region!r}")
        bad = [z for z in self.points if not checks[self.region](z)]
        if bad:
            raise DomainError(f"points {bad[:3]} outside region {self.region!r}")


def principal_sqrt(w: complex) -> complex:
    """Square root with arg(w) in (0, 2*pi); cut along the positive reals.

    On the cut itself (w real positive) the limit from above is returned, so
    the result is the ordinary positive root.  principal_sqrt(0) = 0 by
    convention.
    """
    w = complex(w)
    if w == 0:
        return 0j
    if w.imag == 0.0 and w.real > 0.0:
        return complex(math.sqrt(w.real), 0.0)
    a = cmath.phase(w)  # in (-pi, pi]
    if a < 0:
        a += 2 * math.pi
    return math.sqrt(abs(w)) * cmath.exp(0.5j * a)


def cauchy_transform(p: GFGParams, z: complex) -> complex:
    """Cauchy-Stieltjes transform of mu(t, theta, lam) on the upper half-plane."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("cauchy_transform needs Im z > 0")
    t, th, lam = p.t, p.theta, p.lam
    sup = support(p)
    root = principal_sqrt((z - sup.lo) * (z - sup.hi))
    num = (t + 2 * th) * z - t * (t - th * (lam - 1)) - t * root
    den = 2 * th * z * (z + t * (lam - 1))
    return num / den


def meixner_cauchy(q: FreeMeixnerParams, z: complex) -> complex:
    """Cauchy transform of the centered free Meixner law with triple (s, a, b)."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("meixner_cauchy needs Im z > 0")
    s, a, b = q.s, q.a, q.b
    if s == 0:
        return 1.0 / z
    root = principal_sqrt((z - a) ** 2 - 4 * (s + b))
    num = (s + 2 * b) * z + s * a - s * root
    den = 2 * (b * z**2 + s * a * z + s**2)
    return num / den


def stieltjes_invert(
    G: Callable[[complex], complex],
    x: float,
    eps_ladder: Sequence[float] = (1e-3, 1e-4, 1e-5),
    tol: float | None = None,
) -> tuple[float, float]:
    """Boundary density -Im(G(x + i*eps))/pi via Richardson extrapolation.

    Returns (value, error_estimate).  With ``tol`` set, raises when the last
    two extrapolants disagree by more than ``tol``.
    """
    eps = list(eps_ladder)
    vals = [-G(complex(x, e)).imag / math.pi for e in eps]
    # geometric ladder; first-order Richardson then second-order
    level1 = []
    for v0, v1, e0, e1 in zip(vals, vals[1:], eps, eps[1:]):
        r = e0 / e1
        level1.append((r * v1 - v0) / (r - 1))
    if len(level1) >= 2:
        r2 = (eps[0] / eps[1]) * (eps[1] / eps[2])
        final = (r2 * level1[1] - level1[0]) / (r2 - 1)
        err = abs(final - level1[1])
    else:
        final = level1[0]
        err = abs(final - vals[-1])
    if tol is not None and err > tol:
        raise NonConvergenceError(
            f"Stieltjes inversion at x={x}: extrapolants differ by {err:.2e}"
        )
    return final, err


# ---------------------------------------------------------------------------
# R-transforms
# ---------------------------------------------------------------------------

def r_gfg(p: GFGParams, z: complex) -> complex:
    """Closed-form R-transform of mu(t, theta, lam); branch fixed by R(z) ~ t z."""
    t, th, lam = p.t, p.theta, p.lam
    z = complex(z)
    a = th * (1 - lam)
    w = (1 + a * z) ** 2 - 4 * th * z
    root = cmath.sqrt(w)  # principal; continuous near the negative real z-axis
    val = t * (1 + a * z - root) / (2 * th)
    return val.real if z.imag == 0 and w.real >= 0 and w.imag == 0 else val


def r_mp(q: MPParams, z: complex) -> complex:
    """R-transform theta*lam*z/(1 - theta*z) of the Marchenko-Pastur law."""
    return q.theta * q.lam * z / (1 - q.theta * z)


def r_bdlp(t: float, theta: float, z: complex) -> complex:
    """R-transform t*z/sqrt(1 - 4*theta*z) of the background driving process."""
    z = complex(z)
    val = t * z / cmath.sqrt(1 - 4 * theta * z)
    return val.real if z.imag == 0 and (1 - 4 * theta * z.real) > 0 else val


def r_free_beta(p: float, z: float) -> float:
    """R-transform of the Meixner-type free beta law on (-p^3/(2(p+1)), 0).

    The quadratic under the root is strictly positive on the reals; the branch
    with R(z) -> 0 as z -> 0^- is the negative root of the quadratic, i.e. the
    arg -> 2*pi boundary value of the (0, 2*pi) square-root convention.
    """
    if p <= 0:
        raise DomainError("free beta parameter p must be positive")
    lo = -p**3 / (2 * (p + 1))
    if not (lo < z < 0):
        raise DomainError(f"z={z} outside ({lo}, 0)")
    f = (3 * p + 2) ** 2 * z**2 - 2 * p**5 * z + p**8
    return (p * (z - p**3) + math.sqrt(f)) / (2 * z)


def r_inverse_gfg(p: GFGParams, z: float) -> float:
    """Compositional inverse of the R-transform: z*S(z) in closed form."""
    t, th, lam = p.t, p.theta, p.lam
    return z * (th * z - t) / (th * t * (1 - lam) * z - t**2)


# ---------------------------------------------------------------------------
# S-transforms
# ---------------------------------------------------------------------------

def _check_s_domain(z: float, atom: float, what: str) -> None:
    if not (-1 + atom < z < 0):
        raise DomainError(f"{what}: z={z} outside ({-1 + atom}, 0)")


def s_gfg(p: GFGParams, z: float) -> float:
    """(t - theta*z) / (t*(t + theta*(lam-1)*z)) on (-1 + atom, 0)."""
    _check_s_domain(z, atom_mass(p), "s_gfg")
    t, th, lam = p.t, p.theta, p.lam
    return (t - th * z) / (t * (t + th * (lam - 1) * z))


def s_mp(q: MPParams, z: float) -> float:
    """1 / (theta*(lam + z)) on (-1 + atom, 0)."""
    _check_s_domain(z, q.atom0, "s_mp")
    return 1.0 / (q.theta * (q.lam + z))


def s_inverse_mp(q: MPParams, z: float) -> float:
    """theta*(lam - 1 - z), the S-transform of the reciprocal MP law (lam >= 1)."""
    if q.lam < 1:
        raise DomainError("reversal needs lam >= 1")
    _check_s_domain(z, 0.0, "s_inverse_mp")
    return q.theta * (q.lam - 1 - z)


def s_fbp(a: float, b: float, z: float) -> float:
    """(b - 1 - z) / (a + z), the free beta prime S-transform."""
    atom = atom_mass(fbp_to_gfg_params(a, b))
    _check_s_domain(z, atom, "s_fbp")
    return (b - 1 - z) / (a + z)


def s_free_beta(p: float, z: float) -> float:
    """p^4 / ((1 + p + z)*(2p + 1 - z)), the Meixner-type free beta S-transform."""
    if p <= 0:
        raise DomainError("free beta parameter p must be positive")
    _check_s_domain(z, 0.0, "s_free_beta")
    return p**4 / ((1 + p + z) * (2 * p + 1 - z))


def s_reversed(s_base: Callable[[float], float], z: float) -> float:
    """S-transform of the reciprocal pushforward: 1 / S(-z - 1)."""
    _check_s_domain(z, 0.0, "s_reversed")
    return 1.0 / s_base(-z - 1)


# ---------------------------------------------------------------------------
# numeric S-transform oracle
# ---------------------------------------------------------------------------

def psi_transform(m: SpectralMeasure, w: float) -> float:
    """Moment generating function Psi(w) = int x*w/(1 - x*w) dmu for real w < 0."""
    if w >= 0:
        raise DomainError("psi_transform oracle evaluates on w < 0 only")
    lo, hi = m.support.lo, m.support.hi
    val, _ = _edge_quad(lambda x: x * w / (1 - x * w) * m.density(x), lo, hi, hi)
    return val


def numeric_s_transform(m: SpectralMeasure, z: float) -> float:
    """S-transform from quadrature of Psi and bracketed inversion.

    Independent of every closed form: only the density of ``m`` enters.
    """
    if not (-1 + m.atom0 < z < 0):
        raise DomainError(f"z={z} outside ({-1 + m.atom0}, 0)")
    w_hi = -1e-12
    w_lo = -1.0 / max(m.support.hi, 1e-12)
    # Psi is increasing on (-inf, 0) with range (atom - 1, 0): expand bracket left
    for _ in range(200):
        if psi_transform(m, w_lo) < z:
            break
        w_lo *= 2.0
    else:
        raise NonConvergenceError(
            f"could not bracket Psi inverse for z={z}: Psi({w_lo})="
            f"{psi_transform(m, w_lo)}"
        )
    w = brentq(lambda u: psi_transform(m, u) - z, w_lo, w_hi, xtol=1e-15, rtol=1e-14)
    return (1 + z) / z * w


def functional_identity_rs(p: GFGParams, z: float) -> float:
    """Residual |R(z*S(z)) - z| of the compositional-inverse identity."""
    w = z * s_gfg(p, z)
    return abs(r_gfg(p, w) - z)
