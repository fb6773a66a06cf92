"""Acceptance gate: nine end-to-end criteria with stated tolerances and
runtime budgets.  Each test prints one PASS line on success."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from freegamma import (
    CATALOG_IDS,
    GFGParams,
    RngStream,
    cauchy_transform,
    default_identity_params,
    el_residual,
    effective_potential,
    endpoint_equations,
    finite_s_at,
    free_beta_fid_witness,
    free_cumulant,
    gfg_density,
    gfg_measure,
    maximality_probe,
    measure_level_check,
    moment,
    partition_function,
    partition_function_quadrature,
    pearson_residual,
    r_gfg,
    s_gfg,
    series_oracle,
    stieltjes_invert,
    support,
    verify_classical_identity,
    verify_identity,
)
from freegamma.cumulants import gfg_r_radius
from freegamma.finite_free import convergence_study


class Budget:
    def __init__(self, seconds):
        self.limit = seconds
        self.t0 = time.monotonic()

    def check(self, label):
        elapsed = time.monotonic() - self.t0
        assert elapsed < self.limit, f"{label}: {elapsed:.1f}s over budget"
        return elapsed


def test_criterion_1_exact_moments():
    budget = Budget(1.0)
    p = GFGParams(1, 1, 1)
    values = [moment(p, n) for n in range(1, 5)]
    assert values == [1, 2, 6, 22]
    assert all(isinstance(v, Fraction) for v in values)
    elapsed = budget.check("moments")
    print(f"\nPASS criterion 1: m1..m4 = 1,2,6,22 exact ({elapsed:.2f}s)")


def test_criterion_2_cumulant_oracle_36_triples():
    budget = Budget(10.0)
    ts = [Fraction(1, 2), 1, 2, Fraction(5, 2)]
    thetas = [Fraction(1, 2), 1, Fraction(3, 2)]
    lams = [1, Fraction(3, 2), 2]
    triples = [(t, th, l) for t in ts for th in thetas for l in lams]
    assert len(triples) == 36
    worst = 0.0
    for t, th, lam in triples:
        p = GFGParams(t, th, lam)
        radius = gfg_r_radius(p)
        coeffs = series_oracle(lambda z: r_gfg(p, z), 8, radius)
        for n, c in enumerate(coeffs, start=1):
            exact = float(free_cumulant(p, n))
            rel = abs(c - exact) / max(1.0, abs(exact))
            worst = max(worst, rel)
            assert rel < 1e-8, (p, n, rel)
        # kappa_2 = t * theta * lam pinned exactly
        assert free_cumulant(p, 2) == t * th * lam
        # the second moment is t^2 + t*theta*lam; the widely quoted
        # "t^2 + theta*t" only agrees in the lam = 1 special case
        assert moment(p, 2) == t**2 + t * th * lam
        if lam != 1:
            assert moment(p, 2) != t**2 + th * t
    elapsed = budget.check("cumulant oracle")
    print(
        f"\nPASS criterion 2: 36 triples, n<=8, worst rel dev "
        f"{worst:.2e} < 1e-8 ({elapsed:.1f}s)"
    )


DENSITY_TRIPLES = [
    GFGParams(1, 1, 1),
    GFGParams(1, 1, 2),
    GFGParams(1, 1, 3),
    GFGParams(2, 1, 1),
    GFGParams(1, 2, 1),
    GFGParams(0.5, 0.5, 1.5),
    GFGParams(2, 0.5, 2.5),
    GFGParams(0.5, 2, 1.1),
    GFGParams(3, 1.5, 1.25),
    GFGParams(1.5, 0.75, 2),
]


def test_criterion_3_normalization_and_inversion():
    budget = Budget(30.0)
    worst_mass = 0.0
    worst_inv = 0.0
    for p in DENSITY_TRIPLES:
        m = gfg_measure(p)
        mass_gap = abs(m.total_mass() - 1.0)
        worst_mass = max(worst_mass, mass_gap)
        assert mass_gap < 1e-8, repr(p)
        sup = support(p)
        xs = np.linspace(
            sup.lo + 0.02 * sup.width, sup.hi - 0.02 * sup.width, 50
        )
        for x in xs:
            val, _ = stieltjes_invert(lambda z: cauchy_transform(p, z), float(x))
            gap = abs(val - gfg_density(p, float(x)))
            worst_inv = max(worst_inv, gap)
            assert gap < 1e-4, (p, x, gap)
    elapsed = budget.check("density")
    print(
        f"\nPASS criterion 3: mass gap {worst_mass:.2e} < 1e-8, inversion "
        f"gap {worst_inv:.2e} < 1e-4 at 50x10 points ({elapsed:.1f}s)"
    )


IDENTITY_BASES = [
    GFGParams(1.0, 1.0, 1.5),
    GFGParams(1.0, 1.0, 2.0),
    GFGParams(2.0, 1.0, 1.25),
    GFGParams(1.0, 2.0, 1.75),
    GFGParams(0.5, 0.5, 2.5),
    GFGParams(3.0, 1.0, 1.2),
    GFGParams(1.5, 0.75, 2.0),
    GFGParams(0.75, 1.5, 3.0),
    GFGParams(2.5, 2.0, 1.4),
    GFGParams(1.0, 0.25, 4.0),
]


def test_criterion_4_identity_catalog():
    budget = Budget(10.0)
    worst = 0.0
    for ident in CATALOG_IDS:
        for base in IDENTITY_BASES:
            rep = verify_identity(ident, default_identity_params(ident, base))
            worst = max(worst, rep.max_abs_deviation)
            assert rep.max_abs_deviation < 1e-10, (ident, base)
    elapsed = budget.check("identity catalog")
    print(
        f"\nPASS criterion 4: 11 identities x 10 parameter sets, worst "
        f"deviation {worst:.2e} < 1e-10 ({elapsed:.1f}s)"
    )


RMT_IDS = (
    "ADD_SEMIGROUP",
    "MULT_FORM_B",
    "MEIXNER_SHIFT",
    "RATIO_LAW",
    "INV_SUM_LAW",
)


def test_criterion_5_rmt_measure_level():
    budget = Budget(300.0)
    seeds = (101, 202, 303)
    for ident in RMT_IDS:
        ks = [measure_level_check(ident, 1000, RngStream(s))["ks"] for s in seeds]
        passes = sum(k < 0.07 for k in ks)
        assert passes > len(seeds) // 2, (ident, ks)
    # atom of mu(1,1,3) (mass 1/2) as the near-zero eigenvalue fraction
    gaps = [
        measure_level_check("MULT_FORM_A", 1000, RngStream(s))["atom_gap"]
        for s in seeds
    ]
    assert max(gaps) < 0.03, gaps
    elapsed = budget.check("rmt")
    print(
        f"\nPASS criterion 5: 5 identities majority KS < 0.07 at N=1000, "
        f"atom gap max {max(gaps):.4f} < 0.03 ({elapsed:.0f}s)"
    )


def test_criterion_6_gibbs_side():
    budget = Budget(120.0)
    sets = [
        GFGParams(1, 1, 1),
        GFGParams(1, 1, 2),
        GFGParams(2, 1, 1.5),
        GFGParams(1, 2, 2.5),
    ]
    for p in sets:
        closed = partition_function(p)
        oracle = partition_function_quadrature(p)
        assert abs(closed - oracle) < 1e-6 * abs(oracle), repr(p)
        for x in np.geomspace(0.02, 25.0, 100):
            assert abs(pearson_residual(p, float(x))) <= 1e-10, (p, x)
    assert partition_function(GFGParams(1, 1, 2)) == pytest.approx(
        0.5, rel=1e-12
    )
    for ident in ("RHO_MULT_B", "RHO_ME"):
        rep = verify_classical_identity(
            ident, GFGParams(1, 1, 2), 10**5, RngStream(7)
        )
        assert rep.ks < 0.02, str(rep)
    elapsed = budget.check("gibbs")
    print(
        f"\nPASS criterion 6: Z quadrature 1e-6, Pearson <= 1e-10 on 100 "
        f"points x 4 sets, KS < 0.02 at n=1e5 ({elapsed:.0f}s)"
    )


def test_criterion_7_equilibrium():
    budget = Budget(180.0)
    for p in (GFGParams(1, 1, 1), GFGParams(1, 1, 1.5), GFGParams(2, 0.5, 3)):
        sup = support(p)
        xs = np.linspace(sup.lo + 0.01 * sup.width, sup.hi - 0.01 * sup.width, 40)
        dev = max(abs(el_residual(p, float(x))) for x in xs)
        assert dev <= 1e-10, (p, dev)
        eq = endpoint_equations(p)
        assert abs(eq["eq0"]) < 1e-8 and abs(eq["eq2"] - 2) < 1e-8, (p, eq)
    # effective potential constant on the support
    p = GFGParams(1, 1, 1)
    sup = support(p)
    grid = np.linspace(sup.lo + 0.03 * sup.width, sup.hi - 0.03 * sup.width, 30)
    vals = [effective_potential(p, float(x)) for x in grid]
    sigma = float(np.std(vals))
    assert sigma < 1e-4, sigma
    probe = maximality_probe(p)
    assert len(probe["rows"]) == 20
    assert probe["all_below"], probe["rows"]
    assert probe["min_margin"] > 1e-6
    elapsed = budget.check("equilibrium")
    print(
        f"\nPASS criterion 7: EL <= 1e-10, endpoints (0,2) to 1e-8, "
        f"potential sigma {sigma:.1e} < 1e-4, 20/20 perturbations below "
        f"by > 1e-6 ({elapsed:.0f}s)"
    )


def test_criterion_8_finite_free():
    budget = Budget(60.0)
    dims = (16, 32, 64, 128)
    for p, s_target in (
        (GFGParams(1.0, 1.0, 2.0), 3.0),
        (GFGParams(1.0, 1.0, 1.0), 1.5),
    ):
        table = convergence_study(p, dims)
        w1 = [row["w1"] for row in table]
        assert all(b < a for a, b in zip(w1, w1[1:])), (p, w1)
        assert w1[-1] < 0.1, (p, w1)
        gap = abs(finite_s_at(p, 200, 0.5) - s_target)
        assert gap < 2e-2, (p, gap)
        assert s_gfg(p, -0.5) == pytest.approx(s_target)
    elapsed = budget.check("finite free")
    print(
        f"\nPASS criterion 8: W1 decreasing over d=16..128 (< 0.1 at 128), "
        f"finite S at d=200 within 2e-2 of 3 and 3/2 ({elapsed:.0f}s)"
    )


def test_criterion_9_non_fid_witness():
    for p in (0.1, 0.5, 1.0, 2.0, 10.0):
        w = free_beta_fid_witness(p)
        assert w["im_part"] > 0, p
        assert w["is_fid"] is False
        # residual relative to the quadratic's constant-coefficient scale
        assert w["residual"] <= 1e-14 * max(1.0, p**8), (p, w["residual"])
    print("\nPASS criterion 9: discriminant roots off the real axis, "
          "quadratic satisfied to 1e-14")
