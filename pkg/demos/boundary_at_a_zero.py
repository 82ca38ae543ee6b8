"""Watch the boundary value die at a zeta zero as the squeeze grows.

The boundary wave function at y = 0 converges to 2 varphi_zero(s) eta(s)
at rate e^{-lambda}.  At the first zero ordinate the limit vanishes, so
the finite-lambda values collapse toward zero; at t = 10 they settle on
a nonzero limit instead.
"""

from zetawave import psi_boundary, psi_boundary_limit

ZERO = 14.134725141734694
OFF = 10.0

for t in (ZERO, OFF):
    s = complex(0.5, t)
    print(f"t = {t}")
    print(f"  limit: {abs(psi_boundary_limit(s)):.6e}")
    for lam in (8.0, 11.0, 14.0):
        value = psi_boundary(0.0, s, 0, lam).value
        print(f"  lambda = {lam:4.1f}: |psi| = {abs(value):.6e}")
