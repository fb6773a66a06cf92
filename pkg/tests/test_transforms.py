import cmath
import math

import pytest

from freegamma import (
    DomainError,
    atom_mass,
    GFGParams,
    MPParams,
    cauchy_transform,
    free_cumulant,
    functional_identity_rs,
    gfg_density,
    gfg_measure,
    numeric_s_transform,
    r_gfg,
    r_mp,
    s_gfg,
    s_mp,
    series_oracle,
    stieltjes_invert,
    support,
)
from freegamma.cumulants import gfg_r_radius
from freegamma.transforms import principal_sqrt


def test_principal_sqrt_branch():
    # branch cut on the positive real axis: upper half-plane maps to itself
    z = principal_sqrt(complex(-4.0, 1e-12))
    assert z.imag == pytest.approx(2.0, abs=1e-6)
    assert principal_sqrt(complex(-4.0, -1e-12)).imag == pytest.approx(
        2.0, abs=1e-6
    )


def test_cauchy_herglotz(std_params):
    for p in std_params:
        for z in (complex(1.0, 0.5), complex(-2.0, 1.0), complex(4.0, 2.0)):
            g = cauchy_transform(p, z)
            assert g.imag < 0, (p, z)
            # decay G(z) ~ 1/z far away
            far = cauchy_transform(p, complex(0, 1e7))
            assert abs(far * complex(0, 1e7) - 1) < 1e-6


def test_stieltjes_inversion_recovers_density():
    p = GFGParams(1.0, 1.0, 2.0)
    sup = support(p)
    for x in (0.5, 2.0, 5.0):
        val, err = stieltjes_invert(lambda z: cauchy_transform(p, z), x)
        assert val == pytest.approx(gfg_density(p, x), abs=1e-6)
        assert err < 1e-6
    assert sup.lo < 0.5 < sup.hi


def test_s_transform_spot_values():
    # S(z) = (t - theta z) / (t (t + theta (lam-1) z))
    assert s_gfg(GFGParams(1.0, 1.0, 1.0), -0.5) == pytest.approx(1.5)
    assert s_gfg(GFGParams(1.0, 1.0, 2.0), -0.5) == pytest.approx(3.0)
    # Marchenko-Pastur S(z) = 1/(theta (lam + z))
    assert s_mp(MPParams(1.0, 1.0), -0.5) == pytest.approx(2.0)


def test_s_domain_enforced():
    p = GFGParams(1.0, 1.0, 3.0)  # atom 1/2, so S lives on (-1/2, 0)
    with pytest.raises(DomainError):
        s_gfg(p, -0.75)
    s_gfg(p, -0.25)  # interior point is fine


def test_numeric_s_matches_closed_form():
    p = GFGParams(1.0, 1.0, 1.0)
    m = gfg_measure(p)
    for z in (-0.7, -0.5, -0.2):
        assert numeric_s_transform(m, z) == pytest.approx(
            s_gfg(p, z), rel=1e-6
        )


def test_r_transform_series_is_cumulant_sequence():
    p = GFGParams(1.0, 2.0, 1.5)
    radius = gfg_r_radius(p)
    coeffs = series_oracle(lambda z: r_gfg(p, z), 5, radius)
    for n, c in enumerate(coeffs, start=1):
        assert c == pytest.approx(float(free_cumulant(p, n)), rel=1e-9)


def test_r_mp_series():
    q = MPParams(2.0, 3.0)  # kappa_n = theta^n * lam
    coeffs = series_oracle(lambda z: r_mp(q, z), 4, 1 / q.theta)
    for n, c in enumerate(coeffs, start=1):
        assert c == pytest.approx(3.0 * 2.0**n, rel=1e-9)


def test_functional_identity_rs(std_params):
    # R(z S(z)) = z pointwise on the common domain
    for p in std_params:
        for z in (-0.6, -0.3, -0.1):
            if z <= -1 + atom_mass(p):
                continue
            assert functional_identity_rs(p, z) == pytest.approx(0.0, abs=1e-12)
