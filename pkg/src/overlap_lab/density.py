"""Counting W, W_hat and W_tilde inside [1, N]^2.

Direct enumeration over coprime pairs is the ground truth. The W_hat count is
cross-checked by the exact Moebius double sum over q = (2k-1) 2^(2ell-1) in
Gamma, which needs no asymptotics.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .numtheory import factorize, gamma_mask, totient_sieve

__all__ = [
    "LIMIT_W",
    "LIMIT_W_HAT",
    "LIMIT_W_TILDE",
    "LIMIT_TOTIENT",
    "LIMIT_ODD_TOTIENT",
    "DensityReport",
    "CountingSchedule",
    "enumerate_counts",
    "density_sweep",
    "coprime_count",
    "counting_schedule",
    "count_W_hat_by_formula",
    "OddTotientAverage",
    "odd_totient_ratio_sum",
    "totient_sum",
    "CSV_COLUMNS",
]

PI2 = math.pi**2
LIMIT_W = 5 / (3 * PI2)
LIMIT_W_HAT = 4 / (3 * PI2)
LIMIT_W_TILDE = 10 / (3 * PI2)
LIMIT_TOTIENT = 3 / PI2
LIMIT_ODD_TOTIENT = 8 / PI2

CSV_COLUMNS = (
    "N",
    "count_W",
    "count_W_hat",
    "count_W_tilde",
    "totient_sum",
    "ratio_W",
    "ratio_W_hat",
    "ratio_W_tilde",
    "delta_W",
    "delta_W_hat",
    "delta_W_tilde",
)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class DensityReport:
    N: int
    count_W: int
    count_W_hat: int
    count_W_tilde: int
    totient_sum: int

    @property
    def ratio_W(self) -> float:
        return self.count_W / self.N**2

    @property
    def ratio_W_hat(self) -> float:
        return self.count_W_hat / self.N**2

    @property
    def ratio_W_tilde(self) -> float:
        return self.count_W_tilde / self.N**2

    @property
    def ratio_totient(self) -> float:
        return self.totient_sum / self.N**2

    @property
    def limits(self) -> dict[str, float]:
        return {
            "W": LIMIT_W,
            "W_hat": LIMIT_W_HAT,
            "W_tilde": LIMIT_W_TILDE,
            "totient": LIMIT_TOTIENT,
        }

    def row(self) -> dict[str, str | int]:
        """One CSV/JSON row; ratios and deltas at 12 significant digits."""
        return {
            "N": self.N,
            "count_W": self.count_W,
            "count_W_hat": self.count_W_hat,
            "count_W_tilde": self.count_W_tilde,
            "totient_sum": self.totient_sum,
            "ratio_W": _fmt(self.ratio_W),
            "ratio_W_hat": _fmt(self.ratio_W_hat),
            "ratio_W_tilde": _fmt(self.ratio_W_tilde),
            "delta_W": _fmt(self.ratio_W - LIMIT_W),
            "delta_W_hat": _fmt(self.ratio_W_hat - LIMIT_W_HAT),
            "delta_W_tilde": _fmt(self.ratio_W_tilde - LIMIT_W_TILDE),
        }


def totient_sum(N: int) -> int:
    if N < 1:
        raise ValueError("N must be >= 1")
    return int(totient_sieve(N).sum())


def _count_rows(N: int, q_lo: int, q_hi: int) -> tuple[int, int, int]:
    """Partial (W, W_hat, W_tilde) counts over rows q in [q_lo, q_hi)."""
    gm = gamma_mask(N)
    p = np.arange(1, N + 1, dtype=np.int64)
    p_outside = ~gm[1:]
    w = w_hat = w_tilde = 0
    for q in range(q_lo, q_hi):
        coprime = np.gcd(p, q) == 1
        below = coprime[: q - 1]
        if gm[q]:
            w_hat += int(below.sum())
        else:
            n_w = int((below & p_outside[: q - 1]).sum())
            w += n_w
            w_hat += int(below.sum()) - n_w
            w_tilde += int((coprime & p_outside).sum())
    return w, w_hat, w_tilde


def _default_jobs() -> int:
    env = os.environ.get("OVERLAP_LAB_JOBS")
    return int(env) if env else 1


def enumerate_counts(N: int, jobs: int | None = None) -> DensityReport:
    """Exact W / W_hat / W_tilde counts in [1, N]^2 by testing every pair.

    Rows are split into contiguous chunks; with ``jobs > 1`` the chunks run in
    worker processes. The merged counts do not depend on the split.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    jobs = jobs or _default_jobs()
    if jobs <= 1:
        w, w_hat, w_tilde = _count_rows(N, 1, N + 1)
    else:
        edges = np.linspace(1, N + 1, jobs + 1).astype(int)
        chunks = [(N, int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_count_rows, *zip(*chunks)))
        w, w_hat, w_tilde = (sum(col) for col in zip(*parts))
    return DensityReport(N, w, w_hat, w_tilde, totient_sum(N))


def density_sweep(N_max: int) -> list[DensityReport]:
    """Reports for every N in [1, N_max], growing the square one row and column at a time."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    gm = gamma_mask(N_max)
    phi = totient_sieve(N_max)
    idx = np.arange(1, N_max + 1, dtype=np.int64)
    reports = []
    w = w_hat = w_tilde = phi_sum = 0
    for n in range(1, N_max + 1):
        below = np.gcd(idx[: n - 1], n) == 1
        outside_below = below & ~gm[1:n]
        phi_sum += int(phi[n])
        if gm[n]:
            w_hat += int(below.sum())
        else:
            k = int(outside_below.sum())
            w += k
            w_hat += int(below.sum()) - k
            # new row (p <= n, q = n) and new column (p = n, q < n); (n, n) is coprime only for n = 1
            w_tilde += 2 * k + (1 if n == 1 else 0)
        reports.append(DensityReport(n, w, w_hat, w_tilde, phi_sum))
    return reports


def coprime_count(N: int, m: int) -> int:
    """#{1 <= n <= N : gcd(n, m) = 1} via Moebius over squarefree divisors of m."""
    if N < 0:
        raise ValueError("N must be non-negative")
    primes = factorize(m).primes
    total = 0
    for r in range(len(primes) + 1):
        sign = -1 if r % 2 else 1
        for combo in combinations(primes, r):
            total += sign * (N // math.prod(combo))
    return total


@dataclass(frozen=True)
class CountingSchedule:
    """k1 = floor((N+2)/4) and, for k <= k1, the largest ell with (2k-1) 2^(2ell-1) <= N."""

    N: int
    k1: int
    ell_k: dict[int, int]


def counting_schedule(N: int) -> CountingSchedule:
    if N < 1:
        raise ValueError("N must be >= 1")
    k1 = (N + 2) // 4
    ell_k = {}
    for k in range(1, k1 + 1):
        odd = 2 * k - 1
        ell = 0
        # integer doubling only; a float log4 would misfloor at exact powers
        while odd << (2 * ell + 1) <= N:
            ell += 1
        ell_k[k] = ell
    return CountingSchedule(N, k1, ell_k)


def count_W_hat_by_formula(N: int) -> int:
    sched = counting_schedule(N)
    total = 0
    for k, top in sched.ell_k.items():
        for ell in range(1, top + 1):
            total += coprime_count(N, (2 * k - 1) << (2 * ell - 1))
    return total


@dataclass(frozen=True)
class OddTotientAverage:
    N: int
    exact: Fraction
    value: float


def odd_totient_ratio_sum(N: int) -> OddTotientAverage:
    """(1/N) * sum_{n<=N} phi(2n-1)/(2n-1), exactly and as a float.

    Each phi(m)/m reduces to a/d with d squarefree and d <= 2N-1, so d is a
    sqrt(2N)-smooth part s times at most one larger prime P. Terms are pooled
    per P over the small-prime denominator S, and the pools (pairwise coprime
    denominators P) are merged by a binary-splitting product tree.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    top = 2 * N - 1
    phi = totient_sieve(top)
    is_prime = phi == np.arange(top + 1) - 1
    root = math.isqrt(top)
    S = math.prod(int(x) for x in np.flatnonzero(is_prime[: root + 1]) if x > 2)
    pools: dict[int, int] = {}
    for m in range(1, top + 1, 2):
        ph = int(phi[m])
        g = math.gcd(ph, m)
        d = m // g
        s = math.gcd(d, S)
        big = d // s
        pools[big] = pools.get(big, 0) + (ph // g) * (S // s)
    head = pools.pop(1, 0)
    items = sorted(pools.items())

    def split(lo: int, hi: int) -> tuple[int, int]:
        # (product of P, sum of pool_P * product / P) over items[lo:hi]
        if hi - lo == 1:
            prime, pool = items[lo]
            return prime, pool
        mid = (lo + hi) // 2
        d1, n1 = split(lo, mid)
        d2, n2 = split(mid, hi)
        return d1 * d2, n1 * d2 + n2 * d1

    big_den, big_num = split(0, len(items)) if items else (1, 0)
    num = head * big_den + big_num
    den = S * big_den * N
    return OddTotientAverage(N, Fraction(num, den), num / den)
