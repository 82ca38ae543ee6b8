"""Bare squeeze overlaps approaching the alternating limit 2(-1)^m."""

from zetawave import overlap_s1

for lam in (5.0, 10.0, 20.0):
    devs = [abs(overlap_s1(m, 0, lam, bare=True) - 2.0 * (-1.0) ** m) for m in range(11)]
    print(f"lambda = {lam:4.1f}: max |overlap - 2(-1)^m| over m <= 10: {max(devs):.3e}")
