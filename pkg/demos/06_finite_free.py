"""Finite free probability: polynomial root distributions converging to the
family law, and coefficient ratios converging to the S-transform.

Run:  python3 demos/06_finite_free.py
"""

from freegamma import GFGParams, build_p_d, finite_s_at, roots, s_gfg
from freegamma.finite_free import convergence_study

p = GFGParams(1.0, 1.0, 2.0)

poly = build_p_d(p, 8)
rs = roots(poly)
print(f"degree-8 model of mu(1,1,2): roots "
      f"{[f'{r:.4f}' for r in rs.roots]}")
print(f"  residual {rs.residual_max:.1e}, distinct = {rs.distinct}")

print("\nroot-distribution convergence (W1 / KS to the closed form):")
for row in convergence_study(p, [8, 16, 32, 64]):
    print(f"  d={row['d']:>3}: W1 {row['w1']:.4f}, KS {row['ks']:.4f}")

target = s_gfg(p, -0.5)
print(f"\ncoefficient ratios vs S(-1/2) = {target}:")
for d in (25, 50, 100, 200):
    approx = finite_s_at(p, d, 0.5)
    print(f"  d={d:>3}: {approx:.6f} (gap {abs(approx - target):.4f})")
