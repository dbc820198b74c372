"""Evaluate the exponential sums and oscillatory integrals behind the
circle method, and check the classical bound shapes empirically.

Three objects appear over and over: the finite generating sum f over a
box, the complete sum S mod q, and the continuous analogue v.  The
monitors divide each by its theoretical bound shape; a ratio that stays
of size one is numerical evidence for the bound.
"""

import numpy as np

from diaglab.expsums import (
    decay_ratio_v,
    eval_S,
    eval_f,
    eval_v,
    weyl_ratio_S,
    weyl_ratio_max,
)

# trivial phases: every term is 1, so the sum just counts the box
print("f(0; X=10) =", eval_f((0.0, 0.0), 10).value, "(2X+1 = 21)")

# Gauss sums: |S(q, a)| = sqrt(q) for odd prime q, numerator coprime
for q in (5, 13, 97):
    print(f"|S({q}, 1)| / sqrt({q}) =",
          abs(eval_S(q, (1,))) / np.sqrt(q))

# Weyl ratio: |S| over q^(1-1/k), scanned over every coprime numerator
worst = max(weyl_ratio_max(q, 3) for q in range(2, 201))
print("worst cubic Weyl ratio over q <= 200:", round(worst, 3))
print("spot check at q=200, a=(3,7):", round(weyl_ratio_S(200, (3, 7)), 3))

# the oscillatory integral decays like a root of the phase size; the
# monitor stays bounded along a log-spaced ray
for mag in (1.0, 10.0, 100.0, 1000.0):
    r = decay_ratio_v((0.5 * mag, mag), 1.0)
    print(f"|beta| ~ {mag:7.1f}: decay ratio {r:.3f}")

print("v(0; X=3) =", eval_v((0.0,), 3.0).value, "(the interval length)")
