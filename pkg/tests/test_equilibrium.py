import numpy as np
import pytest

from freegamma import (
    DomainError,
    GFGParams,
    el_residual,
    endpoint_equations,
    free_entropy,
    gfg_measure,
    hilbert_pv_quadrature,
    hilbert_transform,
    support,
)

SUBCRITICAL = [
    GFGParams(1.0, 1.0, 1.0),
    GFGParams(1.0, 1.0, 1.5),
    GFGParams(2.0, 0.5, 3.0),
]


def test_hilbert_closed_form_vs_pv_oracle():
    p = GFGParams(1.0, 1.0, 1.0)
    sup = support(p)
    for x in (1.0, 3.0, 5.0):
        assert sup.lo < x < sup.hi
        assert hilbert_transform(p, x) == pytest.approx(
            hilbert_pv_quadrature(p, x), abs=1e-6
        )


def test_hilbert_rejects_exterior_points():
    p = GFGParams(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        hilbert_transform(p, 0.05)


def test_euler_lagrange_residual_zero():
    for p in SUBCRITICAL:
        sup = support(p)
        xs = np.linspace(sup.lo + 0.01 * sup.width, sup.hi - 0.01 * sup.width, 20)
        dev = max(abs(el_residual(p, float(x))) for x in xs)
        assert dev < 1e-10, (p, dev)


def test_el_rejects_supercritical():
    with pytest.raises(DomainError):
        el_residual(GFGParams(1.0, 1.0, 3.0), 1.0)


def test_endpoint_equations():
    for p in SUBCRITICAL:
        eq = endpoint_equations(p)
        assert eq["eq0"] == pytest.approx(0.0, abs=1e-8)
        assert eq["eq2"] == pytest.approx(2.0, abs=1e-8)
        assert eq["sum_gap"] == 0
        assert eq["prod_gap"] == 0


def test_free_entropy_frozen_value():
    # regression value at (1, 1, 1); cross-checked against the probe suite
    ev = free_entropy(GFGParams(1.0, 1.0, 1.0), gfg_measure(GFGParams(1.0, 1.0, 1.0)))
    assert ev.total == pytest.approx(-1.6137056388980766, abs=1e-6)
    assert ev.error_estimate < 1e-5


def test_free_entropy_rejects_atom():
    p = GFGParams(1.0, 1.0, 1.5)
    with pytest.raises(DomainError):
        free_entropy(p, gfg_measure(GFGParams(1.0, 1.0, 3.0)))
