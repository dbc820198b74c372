"""Count integer solutions exactly by meet-in-the-middle convolution.

The counter builds the distribution of the value vector over half of
the variables, then pairs it against the mirrored distribution of the
other half.  Table sizes grow like X^k instead of (2X+1)^s, which is
what makes X = 512 reachable for the five-variable quadratic.
"""

import time

from diaglab import (
    count_difference,
    count_homogeneous,
    count_vinogradov,
    enumerate_oracle,
    make_system,
)

form = make_system(5, [(2, [1, 1, 1, -1, -1])])

# ground truth by brute force where the grid is small enough
X = 4
fast = count_homogeneous(form, X)
slow = enumerate_oracle(form, X)
print(f"X={X}: convolution={fast.count}, oracle={slow.count}")
assert fast.count == slow.count

for X in (64, 128, 256, 512):
    t0 = time.time()
    rep = count_homogeneous(form, X)
    print(f"N({X}) = {rep.count}  [{rep.method}, {time.time()-t0:.2f}s]")

# difference counts: pairs x, y with equal value vectors; the diagonal
# x = y alone already gives (2X+1)^s
quad1 = make_system(1, [(2, [1])])
print("single quadratic, one variable:",
      [count_difference(quad1, X).count for X in range(5)], "(4X+1)")

# the classical mean value for the full degree 1..2 system
for X in (16, 32, 64):
    rep = count_vinogradov(3, 2, X)
    print(f"J_(3,2)({X}) = {rep.count},  J/X^3 = {rep.count / X**3:.2f}")
