"""How often a random pair (p, q) in [1, N]^2 overlaps, and how fast it settles.

    python demos/03_density.py
"""

import time

from overlap_lab.density import (
    LIMIT_ODD_TOTIENT,
    LIMIT_TOTIENT,
    LIMIT_W,
    LIMIT_W_HAT,
    LIMIT_W_TILDE,
    count_W_hat_by_formula,
    enumerate_counts,
    odd_totient_ratio_sum,
    totient_sum,
)

print(f"{'N':>6} {'W/N^2':>10} {'W_hat/N^2':>10} {'W_tilde/N^2':>12}")
for N in (10, 100, 1000, 3000):
    r = enumerate_counts(N)
    print(f"{N:6d} {r.ratio_W:10.6f} {r.ratio_W_hat:10.6f} {r.ratio_W_tilde:12.6f}")
print(f"{'limit':>6} {LIMIT_W:10.6f} {LIMIT_W_HAT:10.6f} {LIMIT_W_TILDE:12.6f}")

# The non-overlap count also has a closed Moebius form; it must match exactly.
for N in (50, 400, 1200):
    print(f"N={N}: formula {count_W_hat_by_formula(N)}, enumeration {enumerate_counts(N).count_W_hat}")

start = time.perf_counter()
N = 10**5
avg = odd_totient_ratio_sum(N)
print(f"\nmean of phi(m)/m over odd m < 2N, N={N}: {avg.value:.8f} (limit {LIMIT_ODD_TOTIENT:.8f}) "
      f"exact denominator has {avg.exact.denominator.bit_length()} bits, {time.perf_counter() - start:.2f}s")
print(f"sum phi(n) / N^2: {totient_sum(N) / N**2:.8f} (limit {LIMIT_TOTIENT:.8f})")
