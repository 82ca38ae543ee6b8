"""Fit the squeeze-convergence rates of the boundary value at t = 5.

Expected: slope -1 for the raw tilde variant (e^{-lambda} leading term)
and slope -2 once the first-order correction is subtracted.
"""

from zetawave import convergence_study

s = complex(0.5, 5.0)
for variant in ("tilde", "tilde-corrected"):
    study = convergence_study(s, 0, [8.0, 10.0, 12.0], variant=variant)
    print(f"{variant}: slope = {study.slope:.5f} fit residual = {study.fit_residual:.1e}")
    for rec in study.records:
        print(f"  lambda = {rec.lam:4.1f}: |error| = {rec.abs_error:.3e}")
