import math

import numpy as np
import pytest

from freegamma import (
    GFGParams,
    InvalidParameterError,
    MPParams,
    atom_mass,
    endpoint_sum_product,
    gfg_density,
    gfg_measure,
    mode,
    mp_density,
    mp_measure,
    structural_predicates,
    support,
)


def test_param_validation():
    with pytest.raises(InvalidParameterError):
        GFGParams(0.0, 1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        GFGParams(1.0, -1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        GFGParams(1.0, 1.0, 0.5)


def test_support_endpoints_exact():
    # edges are theta*(lam+1) + t -/+ 2*sqrt(theta*lam*(theta+t))
    sup = support(GFGParams(1.0, 1.0, 1.0))
    assert sup.lo == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-15)
    assert sup.hi == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-15)
    # boundary regime lam = 1 + t/theta touches 0 exactly
    sup0 = support(GFGParams(1.0, 1.0, 2.0))
    assert sup0.lo == 0.0
    assert sup0.hi == 8.0


def test_endpoint_sum_product_rational():
    s, q = endpoint_sum_product(GFGParams(1.0, 1.0, 1.0))
    assert s == 6 and q == 1  # sum 2c, product (theta*(lam-1) - t)^2


def test_atom_mass():
    assert atom_mass(GFGParams(1.0, 1.0, 1.0)) == 0.0
    assert atom_mass(GFGParams(1.0, 1.0, 2.0)) == 0.0
    # atom of mass 1 - t/(theta*(lam-1)) once lam > 1 + t/theta
    assert atom_mass(GFGParams(1.0, 1.0, 3.0)) == pytest.approx(0.5, abs=1e-15)


def test_density_normalizes(std_params):
    for p in std_params:
        m = gfg_measure(p)
        assert m.total_mass() == pytest.approx(1.0, abs=1e-8), repr(p)


def test_density_zero_off_support():
    p = GFGParams(1.0, 1.0, 1.0)
    sup = support(p)
    assert gfg_density(p, sup.lo - 0.1) == 0.0
    assert gfg_density(p, sup.hi + 0.1) == 0.0


def test_cdf_and_quantile_roundtrip():
    m = gfg_measure(GFGParams(1.0, 1.0, 1.0))
    for q in (0.1, 0.5, 0.9):
        x = m.quantile(q)
        assert m.cdf(x) == pytest.approx(q, abs=1e-7)


def test_dilate_moves_support_and_mass():
    m = gfg_measure(GFGParams(1.0, 1.0, 1.0))
    d = m.dilate(2.0)
    assert d.support.lo == pytest.approx(2 * m.support.lo)
    assert d.total_mass() == pytest.approx(1.0, abs=1e-8)
    x = 0.5 * (m.support.lo + m.support.hi)
    assert d.density(2 * x) == pytest.approx(m.density(x) / 2.0, rel=1e-12)


def test_mp_density_matches_closed_form():
    # MP(1, 1) density 1/(2 pi) sqrt((4-x)/x) on (0, 4)
    q = MPParams(1.0, 1.0)
    for x in (0.5, 1.0, 2.0, 3.5):
        expect = math.sqrt((4 - x) / x) / (2 * math.pi)
        assert mp_density(q, x) == pytest.approx(expect, rel=1e-12)
    assert mp_measure(q).total_mass() == pytest.approx(1.0, abs=1e-8)


def test_mode_is_interior_maximum():
    p = GFGParams(1.0, 1.0, 1.0)
    x0 = mode(p)
    sup = support(p)
    assert sup.lo < x0 < sup.hi
    f0 = gfg_density(p, x0)
    h = 1e-4 * (sup.hi - sup.lo)
    assert f0 >= gfg_density(p, x0 - h)
    assert f0 >= gfg_density(p, x0 + h)


def test_structural_predicates():
    flags = structural_predicates(GFGParams(1.0, 1.0, 1.0))
    assert flags["unimodal"] is True
    assert flags["density_bounded"] is True
    atomic = structural_predicates(GFGParams(1.0, 1.0, 3.0))
    assert atomic["unimodal"] is False
