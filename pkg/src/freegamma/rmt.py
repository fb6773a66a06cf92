"""Random-matrix oracle: empirical spectra whose limits are the family laws.

Every construction here goes through Wishart matrices, matrix inverses and
Haar-orthogonal conjugation only; no closed-form density or transform enters,
so agreement with the analytic module is a genuine cross-check.

Real orthogonal (rather than complex unitary) conjugation is used throughout:
the first-order limits agree and the arithmetic is halved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .errors import DomainError, InvalidParameterError
from .measures import (
    GFGParams,
    MPParams,
    SpectralMeasure,
    SupportInterval,
    atom_mass,
    gfg_measure,
    mp_measure,
    support,
)
from .transforms import FreeMeixnerParams, meixner_cauchy, stieltjes_invert

__all__ = [
    "RngStream",
    "EmpiricalDistribution",
    "sample_mp_esd",
    "wishart_matrix",
    "inverse_wishart_matrix",
    "gfg_matrix",
    "haar_orthogonal",
    "esd_map",
    "free_add_sample",
    "free_mult_sample",
    "compare",
    "MEASURE_LEVEL_IDS",
    "measure_level_check",
]

EIG_FLOOR = -1e-10  # Wishart spectra below this are an error, above are clamped


@dataclass(frozen=True)
class RngStream:
    """Deterministic generator keyed by (seed, stream_id).

    The pair seeds a fresh ``numpy`` PCG64 state, so identical pairs give
    identical sequences independent of thread count or call site.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, self.stream_id])

    def child(self, k: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id * 1000 + k + 1)


@dataclass(frozen=True)
class EmpiricalDistribution:
    samples: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if not np.all(np.isfinite(s)):
            raise InvalidParameterError("empirical samples must be finite")
        object.__setattr__(self, "samples", np.sort(s))

    @property
    def n(self) -> int:
        return self.samples.size

    def cdf(self, x: float) -> float:
        return float(np.searchsorted(self.samples, x, side="right")) / self.n

    def near_zero_fraction(self, tol: float = 1e-8) -> float:
        return float(np.mean(np.abs(self.samples) <= tol))


def _eigvals_clamped(mat: np.ndarray) -> np.ndarray:
    ev = eigvalsh(mat)
    if ev.min() < EIG_FLOOR:
        raise InvalidParameterError(
            f"eigenvalue {ev.min():.3e} below the nonnegativity floor"
        )
    # snap rank-deficiency roundoff to an exact zero eigenvalue
    tol = mat.shape[0] * np.finfo(float).eps * max(np.abs(ev).max(), 1.0)
    ev[np.abs(ev) <= tol] = 0.0
    return np.clip(ev, 0.0, None)


def wishart_matrix(q: MPParams, N: int, rng: RngStream) -> np.ndarray:
    """(theta/N) X X^T with X an N x round(lam*N) real Gaussian matrix."""
    if N < 1:
        raise DomainError("N must be >= 1")
    M = int(round(q.lam * N))
    if M < 1:
        raise DomainError("lam*N must round to at least 1")
    X = rng.generator().standard_normal((N, M))
    return (q.theta / N) * (X @ X.T)


def inverse_wishart_matrix(q: MPParams, N: int, rng: RngStream) -> np.ndarray:
    W = wishart_matrix(q, N, rng)
    ev = eigvalsh(W)
    if ev.min() <= 1e-12:
        raise InvalidParameterError(
            "Wishart sample numerically singular; cannot invert"
        )
    return np.linalg.inv(W)


def sample_mp_esd(q: MPParams, N: int, rng: RngStream) -> EmpiricalDistribution:
    """Wishart eigenvalues; the ESD tends to the Marchenko-Pastur law."""
    ev = _eigvals_clamped(wishart_matrix(q, N, rng))
    return EmpiricalDistribution(
        ev, {"seed": rng.seed, "construction": f"wishart{q}", "matrix_dim": N}
    )


def gfg_matrix(p: GFGParams, N: int, rng: RngStream) -> np.ndarray:
    """Matrix model for mu(t, theta, lam).

    lam = 1: inverse of a Wishart sample for MP(theta/t^2, 1 + t/theta).
    lam > 1: dilated free product of MP(1, t/(theta*(lam-1))) with an inverse
    MP(1, 1 + t/theta) sample, conjugated by an independent Haar rotation.
    """
    t, th, lam = p.t, p.theta, p.lam
    if lam == 1:
        return inverse_wishart_matrix(MPParams(th / t**2, 1 + t / th), N, rng)
    q = t / (th * (lam - 1))
    A = wishart_matrix(MPParams(1.0, q), N, rng.child(0))
    B = inverse_wishart_matrix(MPParams(1.0, 1 + t / th), N, rng.child(1))
    U = haar_orthogonal(N, rng.child(2))
    sq = _psd_sqrt(A)
    return t * (lam - 1) * (sq @ U @ B @ U.T @ sq)


def haar_orthogonal(N: int, rng: RngStream) -> np.ndarray:
    """Haar-distributed orthogonal matrix via QR with sign-fixed diagonal."""
    Z = rng.generator().standard_normal((N, N))
    Q, R = np.linalg.qr(Z)
    return Q * np.sign(np.diag(R))


def esd_map(e: EmpiricalDistribution, kind: str, c: float = 1.0, shift: float = 0.0):
    """Pointwise transform of an empirical spectrum: reciprocal or affine."""
    if kind == "reciprocal":
        if np.any(e.samples == 0.0):
            raise DomainError("reciprocal map needs all samples nonzero")
        out = 1.0 / e.samples
    elif kind == "affine":
        out = c * e.samples + shift
    else:
        raise DomainError(f"unknown map kind {kind!r}")
    meta = dict(e.meta)
    meta["construction"] = f"{kind}({meta.get('construction', '?')})"
    return EmpiricalDistribution(out, meta)


def _psd_sqrt(A: np.ndarray) -> np.ndarray:
    ev, V = eigh(A)
    if ev.min() < EIG_FLOOR:
        raise InvalidParameterError("matrix not positive semi-definite")
    return (V * np.sqrt(np.clip(ev, 0.0, None))) @ V.T


def free_add_sample(A: np.ndarray, B: np.ndarray, rng: RngStream) -> EmpiricalDistribution:
    """Eigenvalues of A + U B U^T, a finite model of free additive convolution."""
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DomainError("free_add_sample needs two square matrices of equal size")
    N = A.shape[0]
    U = haar_orthogonal(N, rng)
    ev = eigvalsh(A + U @ B @ U.T)
    return EmpiricalDistribution(
        ev, {"seed": rng.seed, "construction": "free_add", "matrix_dim": N}
    )


def free_mult_sample(A: np.ndarray, B: np.ndarray, rng: RngStream) -> EmpiricalDistribution:
    """Eigenvalues of A^{1/2} U B U^T A^{1/2}: free multiplicative convolution."""
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DomainError("free_mult_sample needs two square matrices of equal size")
    N = A.shape[0]
    U = haar_orthogonal(N, rng)
    sq = _psd_sqrt(A)
    if eigvalsh(B).min() < EIG_FLOOR:
        raise InvalidParameterError("B must be positive semi-definite")
    # the product is psd, so tiny negative eigenvalues are roundoff
    ev = _eigvals_clamped(sq @ U @ B @ U.T @ sq)
    return EmpiricalDistribution(
        ev, {"seed": rng.seed, "construction": "free_mult", "matrix_dim": N}
    )


def compare(e: EmpiricalDistribution, m: SpectralMeasure) -> dict:
    """KS and Wasserstein-1 distances plus the first four moment gaps."""
    xs = e.samples
    n = xs.size
    F = np.array([m.cdf(x) for x in xs])
    # left limit differs from F only at the atom
    F_minus = F - m.atom0 * (xs == 0.0)
    # tie-aware empirical cdf and its left limit
    E_plus = np.searchsorted(xs, xs, side="right") / n
    E_minus = np.searchsorted(xs, xs, side="left") / n
    ks = float(
        np.max(np.maximum(np.abs(F - E_plus), np.abs(F_minus - E_minus)))
    )
    # W1 = int |F_emp - F| over an interval covering both supports
    lo = min(xs[0], m.support.lo, 0.0 if m.atom0 else m.support.lo)
    hi = max(xs[-1], m.support.hi)
    t = np.linspace(lo - 1e-9, hi + 1e-9, 513)
    F_emp = np.searchsorted(xs, t, side="right") / n
    F_m = np.array([m.cdf(x) for x in t])
    w1 = float(np.trapezoid(np.abs(F_emp - F_m), t))
    gaps = [
        float(abs(np.mean(xs**k) - (m.moment(k) + 0.0))) for k in range(1, 5)
    ]
    return {"ks": ks, "w1": w1, "moment_gaps": gaps}


# ---------------------------------------------------------------------------
# measure-level identity checks
# ---------------------------------------------------------------------------

MEASURE_LEVEL_IDS = (
    "ADD_SEMIGROUP",
    "MULT_FORM_A",
    "MULT_FORM_B",
    "MEIXNER_SHIFT",
    "RATIO_LAW",
    "INV_SUM_LAW",
)


def _meixner_measure(p: GFGParams) -> SpectralMeasure:
    """Measure of the shifted law built purely from the free Meixner Cauchy
    transform by Stieltjes inversion — independent of the family closed form."""
    nu = FreeMeixnerParams(
        p.t * p.theta * p.lam, p.theta * (p.lam + 1), p.theta**2 * p.lam
    )
    sup = support(p)
    G = lambda z: meixner_cauchy(nu, z)

    def density(x):
        val, _ = stieltjes_invert(G, x)
        return max(val, 0.0)

    return SpectralMeasure(
        atom0=0.0,
        density=density,
        support=SupportInterval(sup.lo - p.t, sup.hi - p.t),
        label="meixner-shifted",
    )


def measure_level_check(identity_id: str, N: int, rng: RngStream) -> dict:
    """Build both sides of one identity as random-matrix spectra and compare.

    Returns the ``compare`` report plus the empirical distribution, with an
    ``atom_gap`` entry for the identity whose target carries an atom.
    """
    if identity_id == "ADD_SEMIGROUP":
        A = gfg_matrix(GFGParams(1, 1, 1), N, rng.child(0))
        B = gfg_matrix(GFGParams(1, 1, 1), N, rng.child(1))
        e = free_add_sample(A, B, rng.child(2))
        target = gfg_measure(GFGParams(2, 1, 1))
    elif identity_id == "MULT_FORM_A":
        p = GFGParams(1, 1, 3)
        A = wishart_matrix(MPParams(1.0, 0.5), N, rng.child(0))
        B = inverse_wishart_matrix(MPParams(1.0, 2.0), N, rng.child(1))
        e = free_mult_sample(A, B, rng.child(2))
        e = esd_map(e, "affine", c=p.t * (p.lam - 1))
        target = gfg_measure(p)
    elif identity_id == "MULT_FORM_B":
        A = gfg_matrix(GFGParams(1, 1, 1), N, rng.child(0))
        B = wishart_matrix(MPParams(1.0, 1.0), N, rng.child(1))
        e = free_mult_sample(A, B, rng.child(2))
        target = gfg_measure(GFGParams(1, 1, 2))
    elif identity_id == "MEIXNER_SHIFT":
        p = GFGParams(1, 1, 2)
        M = gfg_matrix(p, N, rng.child(0))
        e = esd_map(
            EmpiricalDistribution(eigvalsh(M), {"seed": rng.seed}),
            "affine",
            shift=-p.t,
        )
        target = _meixner_measure(p)
    elif identity_id == "RATIO_LAW":
        A = gfg_matrix(GFGParams(1, 1, 1), N, rng.child(0))  # eta(1, 1)
        B = wishart_matrix(MPParams(1.0, 2.0), N, rng.child(1))  # reciprocal eta(1,1)
        e = free_mult_sample(A, B, rng.child(2))
        target = gfg_measure(GFGParams(1, 1, 1.5)).dilate(2.0)
    elif identity_id == "INV_SUM_LAW":
        A = wishart_matrix(MPParams(1.0, 2.0), N, rng.child(0))
        B = wishart_matrix(MPParams(1.0, 2.0), N, rng.child(1))
        e = free_add_sample(A, B, rng.child(2))
        target = mp_measure(MPParams(1.0 / 9.0, 4.0)).dilate(9.0)
    else:
        raise DomainError(f"no measure-level construction for {identity_id!r}")

    report = compare(e, target)
    report["identity_id"] = identity_id
    report["esd"] = e
    report["target_label"] = target.label
    if target.atom0 > 0:
        width = target.support.hi - target.support.lo
        report["atom_gap"] = abs(
            e.near_zero_fraction(1e-6 * width) - target.atom0
        )
    return report
