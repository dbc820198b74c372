"""The archimedean density two ways: oscillatory-integral quadrature and
a triangle-kernel Monte Carlo volume.

The quadrature route integrates the product of one-dimensional
oscillatory integrals over a growing box of frequencies.  The Monte
Carlo route estimates the weighted volume of near-solutions in the unit
cube with a kernel of width 1/T; as T grows it converges to the same
constant, which provides an independent check.
"""

from diaglab import chi_infinity_quadrature, chi_infinity_schmidt, make_system
from diaglab.circle import singular_integral_Q

form = make_system(5, [(2, [1, 1, 1, -1, -1])])

print("box quadrature, growing cutoff:")
for Q in (4.0, 16.0, 64.0):
    rep = singular_integral_Q(form, Q, tol=1e-6)
    print(f"  Q={Q:5.0f}: {rep.value:.6f}")

quad = chi_infinity_quadrature(form, Q=128.0, tol=1e-6)
print(f"quadrature limit estimate: {quad.value:.6f} +- {quad.error:.1e}")

print("\ntriangle-kernel Monte Carlo (2 standard errors quoted):")
for T in (8.0, 16.0, 32.0):
    mc = chi_infinity_schmidt(form, T=T, samples=10**7, seed=0)
    print(f"  T={T:4.0f}: {mc.value:.4f} +- {mc.error:.4f} "
          f"(off by {mc.value - quad.value:+.4f})")

print("\nthe kernel bias shrinks as T grows; both routes meet at the limit")
