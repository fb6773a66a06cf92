import math
import warnings
from fractions import Fraction

import pytest

from freegamma import (
    DomainError,
    GFGParams,
    MonicPolynomial,
    bessel_poly,
    build_p_d,
    finite_s_at,
    finite_s_ratio,
    jacobi_poly,
    roots,
    s_gfg,
    transform_poly,
)
from freegamma.finite_free import falling_factorial


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)
    assert falling_factorial(7, 0) == 1


def test_monic_polynomial_coefficients():
    # e~ = (1, 1, 1) at d = 2 gives x^2 - 2x + 1 = (x - 1)^2
    p = MonicPolynomial(2, (1, 1, 1))
    assert p.coefficients() == [1, -2, 1]
    assert p(1) == 0
    assert p(3) == 4


def test_jacobi_coefficients_exact():
    # e~_k = (b d)_k / (a d)_k
    p = jacobi_poly(Fraction(1), Fraction(1, 2), 4)
    assert p.e_tilde[1] == Fraction(2, 4)
    assert p.e_tilde[2] == Fraction(2 * 1, 4 * 3)


def test_bessel_coefficients_exact():
    p = bessel_poly(Fraction(1), 3)
    # e~_k = d^k / (a d)_k
    assert p.e_tilde[1] == Fraction(3, 3)
    assert p.e_tilde[2] == Fraction(9, 6)
    assert p.e_tilde[3] == Fraction(27, 6)


def test_pole_guard():
    with pytest.raises(DomainError):
        jacobi_poly(Fraction(1, 2), Fraction(1), 4)  # a*d = 2 in 0..3


def test_reflect_and_dilate():
    p = MonicPolynomial(2, (1, Fraction(1), Fraction(2)))
    r = transform_poly(p, "reflect")
    assert r.e_tilde == (1, -1, 2)
    d = transform_poly(p, "dilate", c=Fraction(3))
    assert d.e_tilde == (1, 3, 18)


def test_build_p_d_small_degree_roots():
    # d = 2, lam = 1: roots of the dilated reflected Bessel polynomial are
    # real, positive and distinct
    p = build_p_d(GFGParams(1, 1, 1), 2)
    rs = roots(p)
    assert rs.distinct
    assert len(rs.roots) == 2
    assert all(r > 0 for r in rs.roots)
    # they solve the quadratic exactly
    for r in rs.roots:
        assert abs(p(r)) < 1e-12


def test_roots_large_degree_residual():
    rs = roots(build_p_d(GFGParams(1, 1, 2), 64))
    assert rs.distinct
    assert len(rs.roots) == 64
    assert rs.residual_max < 1e-8


def test_multiple_root_warns():
    squared = MonicPolynomial(2, (1, 1, 1))  # (x - 1)^2
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rs = roots(squared)
    assert not rs.distinct
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_finite_s_ratio_exact():
    p = build_p_d(GFGParams(1, 1, 2), 10)
    ratio = finite_s_ratio(p, 5)
    assert isinstance(ratio, float)
    with pytest.raises(DomainError):
        finite_s_ratio(p, 0)


def test_finite_s_approaches_s_transform():
    p = GFGParams(1.0, 1.0, 2.0)
    target = s_gfg(p, -0.5)
    gaps = [abs(finite_s_at(p, d, 0.5) - target) for d in (50, 100, 200)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 2e-2
