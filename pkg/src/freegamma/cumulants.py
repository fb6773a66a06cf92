"""Exact moments and free cumulants of the family, in rational arithmetic.

Floats are converted to ``Fraction`` exactly, so every moment/cumulant below
is computed without rounding; floats only appear when the caller converts.

The printed closed form for the (n+1)-st free cumulant carries a Narayana sum
whose power of the rate parameter is off by one (it would give a mean of
``theta`` instead of ``theta*lam`` for the Marchenko-Pastur block).  Three
independent routes (Taylor coefficients of the closed-form R-transform, the
S-transform expansion, and the shifted free Meixner variance) force the
corrected power used here; ``series_oracle`` adjudicates this numerically and
the regression tests pin it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import DomainError, NonConvergenceError
from .measures import GFGParams, MPParams

__all__ = [
    "BlockProfile",
    "block_profiles",
    "narayana",
    "mp_moment",
    "free_cumulant",
    "moment",
    "bdlp_cumulant",
    "process_correlation",
    "series_oracle",
    "gfg_r_radius",
]

ENUMERATION_CAP = 16  # block-profile enumeration bound; recursion carries on


@dataclass(frozen=True)
class BlockProfile:
    """Block-size multiplicities (r_1, ..., r_n) of a non-crossing partition."""

    r: tuple[int, ...]

    @property
    def blocks(self) -> int:
        return sum(self.r)

    @property
    def elements(self) -> int:
        return sum(i * ri for i, ri in enumerate(self.r, start=1))

    def count(self) -> int:
        """Number of non-crossing partitions with this profile."""
        n, m = self.elements, self.blocks
        denom = math.prod(math.factorial(ri) for ri in self.r)
        return math.factorial(n) // (denom * math.factorial(n - m + 1))


def block_profiles(n: int) -> Iterator[BlockProfile]:
    """All block-size multiplicity vectors with n elements in total."""

    def rec(remaining, max_size, acc):
        if remaining == 0:
            r = [0] * n
            for size in acc:
                r[size - 1] += 1
            yield BlockProfile(tuple(r))
            return
        for size in range(min(remaining, max_size), 0, -1):
            yield from rec(remaining - size, size, acc + [size])

    yield from rec(n, n, [])


def narayana(n: int, r: int) -> Fraction:
    """Narayana number N(n, r) = C(n, r) * C(n, r-1) / n."""
    return Fraction(math.comb(n, r) * math.comb(n, r - 1), n)


def mp_moment(q: MPParams, n: int) -> Fraction:
    """n-th moment of the Marchenko-Pastur law: theta^n * sum_r N(n,r) lam^r."""
    if n < 1:
        raise DomainError("moment order must be >= 1")
    th, lam = Fraction(q.theta), Fraction(q.lam)
    return th**n * sum(narayana(n, r) * lam**r for r in range(1, n + 1))


def free_cumulant(p: GFGParams, n: int) -> Fraction:
    """n-th free cumulant: kappa_1 = t and kappa_{n+1} = t * m_n(MP(theta, lam))."""
    if n < 1:
        raise DomainError("cumulant order must be >= 1")
    t = Fraction(p.t)
    if n == 1:
        return t
    return t * mp_moment(MPParams(p.theta, p.lam), n - 1)


def _moment_by_profiles(kappa: list[Fraction], n: int) -> Fraction:
    total = Fraction(0)
    for prof in block_profiles(n):
        term = Fraction(prof.count())
        for size, mult in enumerate(prof.r, start=1):
            if mult:
                term *= kappa[size] ** mult
        total += term
    return total


def _moments_by_recursion(kappa: list[Fraction], n: int) -> list[Fraction]:
    """Free moment-cumulant recursion: m_n = sum_k kappa_k * [z^(n-k)] M(z)^k."""
    m = [Fraction(1)] + [Fraction(0)] * n
    for order in range(1, n + 1):
        # powers[k][j] = coefficient of z^j in (sum_{i>=0} m_i z^i)^k,
        # using moments of index < order only (j <= order - k suffices)
        acc = Fraction(0)
        power = [Fraction(1)] + [Fraction(0)] * order  # M(z)^0
        for k in range(1, order + 1):
            new = [Fraction(0)] * (order + 1)
            for j1 in range(order + 1):
                if power[j1] == 0:
                    continue
                for j2 in range(order + 1 - j1):
                    new[j1 + j2] += power[j1] * m[j2]
            power = new
            acc += kappa[k] * power[order - k]
        m[order] = acc
    return m


def moment(p: GFGParams, n: int) -> Fraction:
    """n-th moment via the moment-cumulant recursion, cross-checked against
    direct enumeration over block profiles for n <= 16."""
    if n < 1:
        raise DomainError("moment order must be >= 1")
    kappa = [Fraction(0)] + [free_cumulant(p, k) for k in range(1, n + 1)]
    by_rec = _moments_by_recursion(kappa, n)[n]
    if n <= ENUMERATION_CAP:
        by_enum = _moment_by_profiles(kappa, n)
        if by_enum != by_rec:
            raise ArithmeticError(
                f"moment routes disagree at n={n}: {by_enum} != {by_rec}"
            )
    return by_rec


def bdlp_cumulant(t: float, theta: float, n: int) -> Fraction:
    """Free cumulants t*(2*theta)^(n-1)*(2n-3)!!/(n-1)! of the driving process."""
    if n < 1:
        raise DomainError("cumulant order must be >= 1")
    tf, th = Fraction(t), Fraction(theta)
    if n == 1:
        return tf
    double_fact = math.prod(range(1, 2 * n - 2, 2))  # (2n-3)!!
    return tf * (2 * th) ** (n - 1) * Fraction(double_fact, math.factorial(n - 1))


def process_correlation(s: float, t: float) -> float:
    """Correlation sqrt(min/max) of the free gamma process at two times.

    Cov(X_s, X_t) = kappa_2(mu(min(s,t), theta, lam)) and the variances are
    kappa_2 at s and t, so the theta and lam dependence cancels.
    """
    if s <= 0 or t <= 0:
        raise DomainError("times must be positive")
    return math.sqrt(min(s, t) / max(s, t))


def series_oracle(
    f: Callable[[complex], complex],
    n: int,
    radius: float,
    tol: float = 1e-9,
) -> list[float]:
    """Taylor coefficients of z, ..., z^n of f (analytic at 0, f(0) = 0).

    Circle averaging on |z| = radius/2, with the point count doubled once as
    an empirical analyticity check.
    """

    def coeffs(m_pts):
        r = radius / 2
        zs = [r * cmath.exp(2j * math.pi * j / m_pts) for j in range(m_pts)]
        vals = [f(z) for z in zs]
        out = []
        for k in range(1, n + 1):
            c = sum(v * cmath.exp(-2j * math.pi * j * k / m_pts) for j, v in enumerate(vals))
            out.append(c / (m_pts * r**k))
        return out

    m_pts = max(4 * n, 32)
    c1 = coeffs(m_pts)
    c2 = coeffs(2 * m_pts)
    scale = max(max(abs(c) for c in c2), 1.0)
    drift = max(abs(a - b) for a, b in zip(c1, c2)) / scale
    if drift > tol:
        raise NonConvergenceError(
            f"series oracle did not stabilize (relative drift {drift:.2e}); "
            "f may not be analytic on the supplied disk"
        )
    return [c.real for c in c2]


def gfg_r_radius(p: GFGParams) -> float:
    """Distance from 0 to the nearest branch point of the closed-form R."""
    a = p.theta * (1 - p.lam)
    if a == 0:
        return 1.0 / (4 * p.theta)
    # roots of (1 + a z)^2 - 4 theta z = a^2 z^2 + (2a - 4 theta) z + 1
    b = 2 * a - 4 * p.theta
    disc = cmath.sqrt(b * b - 4 * a * a)
    r1 = (-b + disc) / (2 * a * a)
    r2 = (-b - disc) / (2 * a * a)
    return min(abs(r1), abs(r2))
