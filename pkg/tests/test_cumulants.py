import math
from fractions import Fraction

import pytest

from freegamma import (
    DomainError,
    GFGParams,
    MPParams,
    bdlp_cumulant,
    free_cumulant,
    moment,
    mp_moment,
    process_correlation,
)
from freegamma.cumulants import block_profiles, narayana


def test_narayana_triangle():
    # row n = 4: 1, 6, 6, 1
    assert [narayana(4, r) for r in range(1, 5)] == [1, 6, 6, 1]
    assert sum(narayana(5, r) for r in range(1, 6)) == 42  # Catalan(5)


def test_mp_moments_catalan():
    q = MPParams(1.0, 1.0)
    assert [mp_moment(q, n) for n in range(1, 5)] == [1, 2, 5, 14]


def test_mp_moments_lam_powers():
    # m_n = theta^n sum_r N(n, r) lam^r
    q = MPParams(2.0, 3.0)
    assert mp_moment(q, 2) == 4 * (3 + 9)
    assert mp_moment(q, 3) == 8 * (3 + 3 * 9 + 27)


def test_standard_moments():
    p = GFGParams(1, 1, 1)
    assert [moment(p, n) for n in range(1, 5)] == [1, 2, 6, 22]


def test_moments_are_exact_fractions():
    p = GFGParams(Fraction(1, 2), Fraction(3, 2), Fraction(2))
    m = moment(p, 3)
    assert isinstance(m, Fraction)
    k = free_cumulant(p, 2)
    # kappa_2 = t * theta * lam
    assert k == Fraction(1, 2) * Fraction(3, 2) * 2


def test_cumulants_shifted_mp_structure():
    # kappa_1 = t; kappa_(n+1) = t * m_n(MP(theta, lam))
    p = GFGParams(2, 3, 2)
    assert free_cumulant(p, 1) == 2
    for n in range(1, 5):
        assert free_cumulant(p, n + 1) == 2 * mp_moment(MPParams(3, 2), n)


def test_block_profiles_count_matches_catalan():
    # non-crossing partitions of [n] grouped by block-size profile
    total = sum(pr.count() for pr in block_profiles(4))
    assert total == 14


def test_bdlp_cumulants():
    # driving process: kappa_n = t * (2 theta)^(n-1) * (2n-3)!! / (n-1)!
    assert bdlp_cumulant(2.0, 3.0, 1) == 2
    assert bdlp_cumulant(2.0, 3.0, 2) == 2 * 6
    assert bdlp_cumulant(2.0, 3.0, 3) == 2 * 36 * Fraction(3, 2)
    assert bdlp_cumulant(2.0, 3.0, 4) == 2 * 216 * Fraction(15, 6)


def test_process_correlation():
    assert process_correlation(1.0, 4.0) == pytest.approx(0.5)
    assert process_correlation(4.0, 1.0) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        process_correlation(0.0, 1.0)


def test_moment_degree_guard():
    with pytest.raises(DomainError):
        moment(GFGParams(1, 1, 1), 0)
