"""Scan the critical line up to t = 50 and print the zeros found."""

from zetawave import scan_zeros

records = scan_zeros(0.1, 50.0, step=0.05, refine_tol=1e-10)
print(f"found {len(records)} zeros on (0.1, 50):")
print(f"{'t':>20} {'residual':>12} {'iterations':>10} {'energy':>20}")
for rec in records:
    print(f"{rec.t:>20.12f} {rec.residual:>12.2e} {rec.iterations:>10} {rec.energy:>20.12f}")
