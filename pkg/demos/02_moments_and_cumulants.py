"""Exact rational moments and free cumulants, cross-checked against a Taylor
oracle applied to the closed-form R-transform.

Run:  python3 demos/02_moments_and_cumulants.py
"""

from fractions import Fraction

from freegamma import GFGParams, free_cumulant, moment, r_gfg, series_oracle
from freegamma.cumulants import gfg_r_radius

p = GFGParams(1, 1, 1)
print("mu(1,1,1) exact moments:", [moment(p, n) for n in range(1, 7)])
print("mu(1,1,1) free cumulants:", [free_cumulant(p, n) for n in range(1, 7)])

# rational parameters stay rational all the way through
q = GFGParams(Fraction(1, 2), Fraction(3, 2), 2)
print("\nmu(1/2, 3/2, 2):")
for n in range(1, 5):
    print(f"  m_{n} = {moment(q, n)},  kappa_{n} = {free_cumulant(q, n)}")

# the series oracle extracts Taylor coefficients of R numerically and must
# agree with the combinatorial recursion
radius = gfg_r_radius(q)
coeffs = series_oracle(lambda z: r_gfg(q, z), 5, radius)
print("\nR-transform Taylor coefficients vs exact cumulants:")
for n, c in enumerate(coeffs, start=1):
    exact = float(free_cumulant(q, n))
    print(f"  n={n}: oracle {c:.12f}, exact {exact:.12f}, "
          f"gap {abs(c - exact):.1e}")
