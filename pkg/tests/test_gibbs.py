import math

import numpy as np
import pytest

from freegamma import (
    CLASSICAL_IDS,
    DomainError,
    GFGParams,
    RngStream,
    classical_sampler,
    gibbs_density,
    gibbs_measure,
    partition_function,
    partition_function_quadrature,
    pearson_residual,
    potential,
    verify_classical_identity,
)


def test_partition_function_pinned_values():
    # Z(1,1,1) = Gamma(2) = 1; Z(1,1,2) = int (x+1)^-3 = 1/2; the latter pins
    # the (lam-1) prefactor against the (lam+1) alternative, which gives 1/18
    assert partition_function(GFGParams(1, 1, 1)) == pytest.approx(1.0)
    assert partition_function(GFGParams(1, 1, 2)) == pytest.approx(0.5)
    assert partition_function(GFGParams(2, 1, 1)) == pytest.approx(1 / 32)


def test_partition_function_vs_quadrature(std_params):
    for p in std_params:
        closed = partition_function(p)
        oracle = partition_function_quadrature(p)
        assert closed == pytest.approx(oracle, rel=1e-8), repr(p)


def test_gibbs_density_normalizes():
    m = gibbs_measure(GFGParams(1.0, 1.0, 2.0))
    assert m.cdf(1e9) == pytest.approx(1.0, abs=1e-8)
    assert m.cdf(0.0) == 0.0


def test_gibbs_quantile_cdf_roundtrip():
    m = gibbs_measure(GFGParams(1.0, 1.0, 1.0))
    qs = np.array([0.1, 0.5, 0.9])
    xs = m.quantile(qs)
    for q, x in zip(qs, xs):
        assert m.cdf(float(x)) == pytest.approx(q, abs=1e-4)


def test_potential_derivative_consistent():
    for p in (GFGParams(1, 1, 1), GFGParams(1, 2, 3)):
        V = potential(p)
        for x in (0.5, 1.0, 4.0):
            h = 1e-6 * x
            fd = (V.value(x + h) - V.value(x - h)) / (2 * h)
            assert V.derivative(x) == pytest.approx(fd, rel=1e-7)


def test_pearson_residual_vanishes(std_params):
    for p in std_params:
        for x in np.geomspace(0.05, 20.0, 25):
            assert abs(pearson_residual(p, float(x))) < 1e-10, (p, x)


def test_sampler_determinism_and_validation():
    a = classical_sampler("gamma", 100, RngStream(1), a=2.0, b=1.0)
    b = classical_sampler("gamma", 100, RngStream(1), a=2.0, b=1.0)
    assert np.array_equal(a, b)
    with pytest.raises(DomainError):
        classical_sampler("gamma", 10, RngStream(1), a=-1.0, b=1.0)
    with pytest.raises(DomainError):
        classical_sampler("nope", 10, RngStream(1))


def test_classical_identities_moderate_n():
    p = GFGParams(1.0, 1.0, 2.0)
    for ident in CLASSICAL_IDS:
        rep = verify_classical_identity(ident, p, 2 * 10**4, RngStream(17))
        assert rep.passed, str(rep)


def test_classical_identity_guards():
    with pytest.raises(DomainError):
        verify_classical_identity("RHO_MULT_A", GFGParams(1, 1, 1), 10**4, RngStream(0))
    with pytest.raises(DomainError):
        verify_classical_identity("RHO_ME", GFGParams(1, 1, 1), 100, RngStream(0))
