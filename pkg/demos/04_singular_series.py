"""The singular series two ways: complex exponential sums vs exact
rational congruence counts.

The arithmetic factor of the predicted solution density is a sum over
moduli q of terms A(q).  The float route evaluates complete exponential
sums; the exact route counts solutions mod q with a packed big-integer
convolution and applies Moebius inversion.  The two agree to full
precision, which cross-validates both implementations.
"""

from fractions import Fraction

from diaglab import A_count, A_exp, M_count, make_system, chi_p
from diaglab.circle import singular_series_truncated

form = make_system(5, [(2, [1, 1, 1, -1, -1])])

print(" q   A_exp(q)        A_count(q)")
for q in (1, 2, 3, 4, 5, 8, 9, 12, 25):
    print(f"{q:2d}   {A_exp(form, q):+.9f}   {A_count(form, q)}")

rep = singular_series_truncated(form, 40, method="exact")
print(f"\npartial series at Q=40: {rep.partial:.9f} "
      f"(last doubling gap {rep.cauchy_gap:.2e})")

# the same quantity factors over primes: chi_p is the limit of
# normalized counts of solutions mod p^i
print("\np-adic densities:")
for p in (2, 3, 5, 7):
    local = chi_p(form, p, i_max=6)
    print(f"chi_{p} = {local.chi_p:.8f}  iterates: "
          + ", ".join(f"{v:.5f}" for _, v in local.iterates[1:6]))

# sanity: the partial sums over prime powers reproduce M directly
p, h = 3, 4
lhs = sum(A_count(form, p**i) for i in range(h + 1))
rhs = Fraction(M_count(form, p**h), (p**h) ** 4)
print(f"\npartial-sum identity at {p}^{h}: {lhs} == {rhs}: {lhs == rhs}")
