"""Numerically verify the 4/(pi^2 r^2) probability floor.

The floor comes from two steps: replace the amplitude sum over a residue
class by an integral, then bound |sin(pi theta)/(pi theta)| below by 2/pi on
|theta| <= 1/2. The demo measures both steps: the worst-case gap between
the exact amplitude and the integral approximation, and the floor itself,
for every coprime base of several moduli.
"""

import math

import numpy as np

from shorsim import FactoringInstance, choose_q, integral_term, verify_bounds

theta = np.linspace(-0.5, 0.5, 2001)
sinc_min = np.abs(np.sinc(theta)).min()
print(f"min |sin(pi t)/(pi t)| on [-1/2, 1/2] grid = {sinc_min:.12g}")
print(f"2/pi                                      = {2 / math.pi:.12g}")
print(f"integral term at theta = 0, r = 4: {integral_term(0.0, 4)} (= 1/r)\n")

print(f"{'n':>4} {'x':>3} {'r':>4} {'p_min':>12} {'1/(3r^2)':>12} "
      f"{'4/pi^2r^2':>12} {'gap*r':>10}")
for n in (15, 21, 35, 55):
    q = choose_q(n).q
    for x in range(2, n):
        if math.gcd(x, n) != 1:
            continue
        rep = verify_bounds(FactoringInstance.create(n, x), q)
        assert rep.exceeds_one_third and rep.meets_sinc_floor
        print(f"{n:>4} {x:>3} {rep.r:>4} {rep.p_min:>12.6g} "
              f"{rep.one_third_bound:>12.6g} {rep.sinc_floor:>12.6g} "
              f"{rep.max_integral_gap * rep.r:>10.2e}")

print("\nevery row satisfies p_min > 1/(3 r^2), and the integral "
      "approximation sits within a small fraction of 1/r of the exact "
      "amplitude, so the floor argument is sound at proper register sizes")
