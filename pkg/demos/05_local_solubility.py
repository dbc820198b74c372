"""Local solubility witnesses: p-adic points by Hensel lifting and real
points by damped Newton iteration.

A positive predicted density requires a non-degenerate solution in every
completion.  At odd p a solution mod p with nonvanishing gradient lifts
indefinitely; at p = 2 the gradient of a quadratic is always even, so
the search works mod higher powers of 2 until the quantitative Newton
condition holds.
"""

from diaglab import local_solubility_p, local_solubility_real, make_system

form = make_system(5, [(2, [1, 1, 1, -1, -1])])

for p in (2, 3, 5, 7, 11):
    wit = local_solubility_p(form, p, depth=4)
    print(f"p={p}: found={wit.found}, witness mod {p}^4 = {wit.witness}")

real = local_solubility_real(form, seed=0)
print("real witness:", tuple(round(v, 4) for v in real.witness))
check = sum(c * x**2 for c, x in zip((1, 1, 1, -1, -1), real.witness))
print("residual at the witness:", f"{abs(check):.2e}")

# a form with no nontrivial solutions anywhere local: four plus-squares
definite = make_system(4, [(2, [1, 1, 1, 1])])
print("\nsum of four squares:")
print("  real:", local_solubility_real(definite, starts=10).found)
print("  2-adic:", local_solubility_p(definite, 2).found,
      "(anisotropic: only the zero solution)")
