"""Catalog of free convolution identities, verified pointwise on transforms.

Every identity in the family admits closed-form R or S transforms on both
sides, so equality is checked as a max deviation over a grid rather than by
constructing convolved measures; the random-matrix module provides the
measure-level counterpart.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .measures import GFGParams, MPParams, FreeMeixnerParams, atom_mass
from .cumulants import gfg_r_radius
from .transforms import (
    TransformGrid,
    cauchy_transform,
    meixner_cauchy,
    r_free_beta,
    r_gfg,
    r_mp,
    s_free_beta,
    s_gfg,
    s_inverse_mp,
    s_mp,
)

__all__ = [
    "IdentityReport",
    "ScaledParams",
    "FBPParams",
    "CATALOG_IDS",
    "map_params",
    "default_identity_params",
    "verify_identity",
    "free_beta_fid_witness",
]

CATALOG_IDS = (
    "ADD_SEMIGROUP",
    "SCALE_LAW",
    "MULT_FORM_A",
    "MULT_FORM_B",
    "MEIXNER_SHIFT",
    "RATIO_LAW",
    "INV_SUM_LAW",
    "HALF_SUM_COR",
    "FREE_BETA_S",
    "FREE_BETA_RS",
    "S_REVERSAL",
)


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    params: str
    grid: TransformGrid
    max_abs_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation <= self.tolerance

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{self.identity_id} [{self.params}]: max dev "
            f"{self.max_abs_deviation:.3e} (tol {self.tolerance:.1e}) {verdict}"
        )


@dataclass(frozen=True)
class FBPParams:
    """Free beta prime parameters a > 0, b > 1."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 1):
            raise DomainError(f"free beta prime needs a > 0, b > 1; got {self}")


@dataclass(frozen=True)
class ScaledParams:
    """A dilation factor together with the parameters of the base measure."""

    scale: float
    params: object

    def __post_init__(self):
        if not (self.scale > 0):
            raise DomainError("dilation scale must be positive")


# ---------------------------------------------------------------------------
# parameter dictionaries between families
# ---------------------------------------------------------------------------

def map_params(kind: str, **kw):
    """Translate parameters between the families related by the dictionary.

    Kinds: ``eta``, ``fbp_to_gfg``, ``gfg_to_fbp``, ``reversed``,
    ``inverse_mp_of_gfg1``, ``inverse_sum``.
    """
    if kind == "eta":
        t, th = kw["t"], kw["theta"]
        return GFGParams(t * th, th, 1)
    if kind == "fbp_to_gfg":
        f = FBPParams(kw["a"], kw["b"])
        a, b = Fraction(f.a), Fraction(f.b)
        return GFGParams(a / (b - 1), a / (b - 1) ** 2, (a + b - 1) / a)
    if kind == "gfg_to_fbp":
        p = kw["p"]
        t, th, lam = Fraction(p.t), Fraction(p.theta), Fraction(p.lam)
        if lam <= 1:
            raise DomainError("gfg_to_fbp needs lam > 1")
        return ScaledParams(
            scale=t * (lam - 1),
            params=FBPParams(t / (th * (lam - 1)), 1 + t / th),
        )
    if kind == "reversed":
        p = kw["p"]
        t, th, lam = Fraction(p.t), Fraction(p.theta), Fraction(p.lam)
        if not (1 < lam < 1 + t / th):
            # the printed map has denominator t - theta*(lam-1), singular at
            # the right endpoint; restrict to the strict interior
            raise DomainError(
                "reversal dictionary needs 1 < lam < 1 + t/theta strictly"
            )
        d = t - th * (lam - 1)
        return ScaledParams(
            scale=1 / (t * (lam - 1)),
            params=GFGParams(
                (th + t) * (lam - 1) / d,
                th * (th + t) * (lam - 1) ** 2 / d**2,
                t * lam / ((th + t) * (lam - 1)),
            ),
        )
    if kind == "inverse_mp_of_gfg1":
        t, th = Fraction(kw["t"]), Fraction(kw["theta"])
        return MPParams(th / t**2, 1 + t / th)
    if kind == "inverse_sum":
        pp, n = Fraction(kw["p"]), kw["n"]
        two_n = Fraction(2) ** n
        return ScaledParams(
            scale=1 / (two_n + (two_n - 1) / pp) ** 2,
            params=two_n * pp + two_n - 1,
        )
    raise DomainError(f"unknown dictionary kind {kind!r}")


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def _s_grid(atom: float, npoints: int) -> TransformGrid:
    lo, hi = -1.0 + atom, 0.0
    width = hi - lo
    pts = np.linspace(lo + 0.02 * width, hi - 0.02 * width, npoints)
    return TransformGrid(tuple(float(z) for z in pts), "negative-real-segment")


def _r_grid(radius: float, npoints: int) -> TransformGrid:
    pts = np.linspace(-0.9 * radius, -0.02 * radius, npoints)
    return TransformGrid(tuple(float(z) for z in pts), "negative-real-segment")


def _upper_grid(npoints: int, scale: float = 4.0) -> TransformGrid:
    rng = np.random.default_rng(7)
    re = rng.uniform(-2 * scale, 2 * scale, npoints)
    im = rng.uniform(0.2, 2 * scale, npoints)
    return TransformGrid(tuple(complex(a, b) for a, b in zip(re, im)), "upper-half-plane")


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def _check_add_semigroup(p: GFGParams, grid):
    p1 = GFGParams(0.375 * p.t, p.theta, p.lam)
    p2 = GFGParams(0.625 * p.t, p.theta, p.lam)
    if grid is None:
        grid = _r_grid(gfg_r_radius(p), 50)
    dev = max(
        abs(r_gfg(p1, z) + r_gfg(p2, z) - r_gfg(p, z)) for z in grid.points
    )
    return grid, dev


def _check_scale_law(p: GFGParams, grid):
    p1 = GFGParams(p.t, 1.0, p.lam)
    if grid is None:
        radius = min(gfg_r_radius(p), gfg_r_radius(p1) / p.theta)
        grid = _r_grid(radius, 50)
    dev = max(
        abs(r_gfg(p, z) - r_gfg(p1, p.theta * z) / p.theta) for z in grid.points
    )
    return grid, dev


def _check_mult_form_a(p: GFGParams, grid):
    t, th, lam = p.t, p.theta, p.lam
    if lam <= 1:
        raise DomainError("MULT_FORM_A needs lam > 1")
    q = t / (th * (lam - 1))
    scale = t * (lam - 1)
    mp_a = MPParams(1.0, q)
    mp_b = MPParams(1.0, 1 + t / th)
    atom = max(atom_mass(p), mp_a.atom0)
    if grid is None:
        grid = _s_grid(atom, 50)
    dev = max(
        abs(s_gfg(p, z) - s_mp(mp_a, z) * s_inverse_mp(mp_b, z) / scale)
        for z in grid.points
    )
    return grid, dev


def _check_mult_form_b(p: GFGParams, grid):
    t, th, lam = p.t, p.theta, p.lam
    if lam <= 1:
        raise DomainError("MULT_FORM_B needs lam > 1")
    q = t / (th * (lam - 1))
    base = GFGParams(t, th, 1)
    mp_q = MPParams(1.0 / q, q)
    atom = max(atom_mass(p), mp_q.atom0)
    if grid is None:
        grid = _s_grid(atom, 50)
    dev = max(
        abs(s_gfg(p, z) - s_gfg(base, z) * s_mp(mp_q, z)) for z in grid.points
    )
    return grid, dev


def _check_meixner_shift(p: GFGParams, grid):
    nu = FreeMeixnerParams(
        p.t * p.theta * p.lam, p.theta * (p.lam + 1), p.theta**2 * p.lam
    )
    if grid is None:
        grid = _upper_grid(50)
    dev = max(
        abs(cauchy_transform(p, z) - meixner_cauchy(nu, z - p.t))
        for z in grid.points
    )
    return grid, dev


def _check_ratio_law(pq: tuple, grid):
    pp, qq = pq
    lhs_gamma = GFGParams(pp, 1, 1)
    tau_q = MPParams(qq**-2, 1 + qq)
    rhs = GFGParams(pp, 1, 1 + pp / (1 + qq))
    scale = (1 + qq) / qq**2
    if grid is None:
        grid = _s_grid(0.0, 50)
    dev = max(
        abs(s_gfg(lhs_gamma, z) * s_mp(tau_q, z) - s_gfg(rhs, z) / scale)
        for z in grid.points
    )
    return grid, dev


def _check_inv_sum_law(pn: tuple, grid):
    pp, n = pn
    two_n = 2**n
    tau_p = MPParams(pp**-2, 1 + pp)
    p2 = two_n * pp + two_n - 1
    tau_p2 = MPParams(p2**-2, 1 + p2)
    c = (two_n + (two_n - 1) / pp) ** 2
    if grid is None:
        grid = _r_grid(0.5, 50)
    # dilation by c multiplies kappa_n by c^n, i.e. R(z) -> R(c*z)
    dev = max(
        abs(two_n * r_mp(tau_p, z) - r_mp(tau_p2, c * z)) for z in grid.points
    )
    return grid, dev


def _check_half_sum_cor(m: int, grid):
    if m < 2:
        raise DomainError("HALF_SUM_COR needs integer m >= 2")
    pp = 1.0 / (2 * (m - 1))
    lhs_scale = pp**2 / (2 * pp + 1) ** 2
    lhs = GFGParams(2 * pp + 1, 1, 1)
    rhs_scale = 1.0 / (4 * m**2)
    rhs = GFGParams(2 * pp * m, 1, 1)
    if grid is None:
        radius = min(
            gfg_r_radius(lhs) / lhs_scale, gfg_r_radius(rhs) / rhs_scale
        )
        grid = _r_grid(radius, 50)
    dev = max(
        abs(r_gfg(lhs, lhs_scale * z) - r_gfg(rhs, rhs_scale * z))
        for z in grid.points
    )
    return grid, dev


def _check_free_beta_s(pp: float, grid):
    tau_p = MPParams(pp**-2, 1 + pp)
    eta_scale = pp**2 / (2 * pp + 1) ** 2
    eta = GFGParams(2 * pp + 1, 1, 1)
    if grid is None:
        grid = _s_grid(0.0, 50)
    dev = max(
        abs(s_free_beta(pp, z) - s_mp(tau_p, z) * eta_scale / s_gfg(eta, z))
        for z in grid.points
    )
    return grid, dev


def _check_free_beta_rs(pp: float, grid):
    if grid is None:
        pts = np.linspace(-0.95, -0.05, 50)
        grid = TransformGrid(tuple(float(z) for z in pts), "negative-real-segment")
    dev = max(
        abs(r_free_beta(pp, z * s_free_beta(pp, z)) - z) for z in grid.points
    )
    return grid, dev


def _check_s_reversal(q: MPParams, grid):
    if q.lam < 1:
        raise DomainError("S_REVERSAL needs lam >= 1")
    if grid is None:
        grid = _s_grid(0.0, 50)
    dev = max(
        abs(s_inverse_mp(q, z) - 1.0 / s_mp(q, -z - 1)) for z in grid.points
    )
    return grid, dev


_CHECKS = {
    "ADD_SEMIGROUP": _check_add_semigroup,
    "SCALE_LAW": _check_scale_law,
    "MULT_FORM_A": _check_mult_form_a,
    "MULT_FORM_B": _check_mult_form_b,
    "MEIXNER_SHIFT": _check_meixner_shift,
    "RATIO_LAW": _check_ratio_law,
    "INV_SUM_LAW": _check_inv_sum_law,
    "HALF_SUM_COR": _check_half_sum_cor,
    "FREE_BETA_S": _check_free_beta_s,
    "FREE_BETA_RS": _check_free_beta_rs,
    "S_REVERSAL": _check_s_reversal,
}


def default_identity_params(identity_id: str, p: GFGParams):
    """Parameter set for each identity derived from one family triple."""
    if identity_id in (
        "ADD_SEMIGROUP",
        "SCALE_LAW",
        "MULT_FORM_A",
        "MULT_FORM_B",
        "MEIXNER_SHIFT",
    ):
        return p
    if identity_id == "RATIO_LAW":
        return (p.t, p.theta + p.t)
    if identity_id == "INV_SUM_LAW":
        return (p.t, 1)
    if identity_id == "HALF_SUM_COR":
        return 2 + int(p.lam)
    if identity_id in ("FREE_BETA_S", "FREE_BETA_RS"):
        return p.t
    if identity_id == "S_REVERSAL":
        return MPParams(p.theta, p.lam)
    raise DomainError(f"unknown identity {identity_id!r}")


def verify_identity(
    identity_id: str,
    params,
    grid: TransformGrid | None = None,
    tolerance: float = 1e-10,
) -> IdentityReport:
    """Evaluate one catalog identity pointwise and report the max deviation."""
    if identity_id not in _CHECKS:
        raise DomainError(f"unknown identity {identity_id!r}")
    grid, dev = _CHECKS[identity_id](params, grid)
    return IdentityReport(
        identity_id=identity_id,
        params=repr(params),
        grid=grid,
        max_abs_deviation=float(dev),
        tolerance=tolerance,
    )


def free_beta_fid_witness(p: float) -> dict:
    """Roots of the discriminant quadratic of the free beta R-transform.

    Their nonzero imaginary part is what obstructs analytic continuation to
    the lower half-plane, hence free infinite divisibility fails.
    """
    if p <= 0:
        raise DomainError("p must be positive")
    denom = (3 * p + 2) ** 2
    im = 2 * math.sqrt((p + 1) * (2 * p + 1))
    roots = (
        p**4 * complex(p, -im) / denom,
        p**4 * complex(p, im) / denom,
    )
    residual = max(
        abs(denom * z**2 - 2 * p**5 * z + p**8) for z in roots
    )
    return {
        "root_pair": roots,
        "is_fid": False,
        "residual": residual,
        "im_part": abs(roots[0].imag),
    }
