"""Integer primitives: factorization, totient, Moebius, and membership in Gamma.

Gamma is the set of positive integers ``(2k - 1) * 2**(2*ell - 1)``, i.e. the
integers whose 2-adic valuation is odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Factorization",
    "GammaWitness",
    "gcd",
    "factorize",
    "euler_phi",
    "mobius",
    "divisor_count",
    "divisors",
    "two_adic_valuation",
    "gamma_membership",
    "in_gamma",
    "in_gamma_ell",
    "totient_sieve",
    "gamma_mask",
]


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization as ``((prime, exponent), ...)``."""

    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for prime, exp in self.factors:
            out *= prime**exp
        return out

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class GammaWitness:
    """Certificate that ``n = (2k - 1) * 2**(2*ell - 1)`` lies in Gamma."""

    k: int
    ell: int

    @property
    def tau(self) -> int:
        return 2 ** (2 * self.ell - 1)

    @property
    def value(self) -> int:
        return (2 * self.k - 1) * self.tau

    def to_dict(self) -> dict:
        return {"k": self.k, "ell": self.ell}


def gcd(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("gcd arguments must be non-negative")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def factorize(n: int) -> Factorization:
    """Trial division up to sqrt(n); deterministic and fine for n up to ~1e12."""
    _require_positive(n)
    n = int(n)
    factors = []
    if n % 2 == 0:
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        factors.append((2, e))
    d = 3
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 2
    if n > 1:
        factors.append((n, 1))
    return Factorization(tuple(factors))


def euler_phi(n: int) -> int:
    result = 1
    for prime, exp in factorize(n):
        result *= prime ** (exp - 1) * (prime - 1)
    return result


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(exp > 1 for _, exp in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisor_count(n: int) -> int:
    return math.prod(exp + 1 for _, exp in factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for prime, exp in factorize(n):
        divs = [d * prime**e for d in divs for e in range(exp + 1)]
    return sorted(divs)


def two_adic_valuation(n: int) -> int:
    _require_positive(n)
    n = int(n)
    return (n & -n).bit_length() - 1


def gamma_membership(n: int) -> GammaWitness | None:
    """Return (k, ell) with n = (2k-1) 2^(2ell-1), or None when n is not in Gamma."""
    v = two_adic_valuation(n)
    if v % 2 == 0:
        return None
    odd = int(n) >> v
    return GammaWitness(k=(odd + 1) // 2, ell=(v + 1) // 2)


def in_gamma(n: int) -> bool:
    return two_adic_valuation(n) % 2 == 1


def in_gamma_ell(n: int, ell: int) -> bool:
    """Membership in Gamma_ell = {(2k-1) 2^(2ell-1)}: valuation exactly 2ell-1."""
    _require_positive(ell, "ell")
    return two_adic_valuation(n) == 2 * ell - 1


def totient_sieve(limit: int) -> np.ndarray:
    """phi(0..limit) as an int64 array (phi(0) is set to 0)."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    phi = np.arange(limit + 1, dtype=np.int64)
    if limit >= 1:
        phi[0] = 0
    for p in range(2, limit + 1):
        if phi[p] == p:  # untouched => prime
            phi[p::p] -= phi[p::p] // p
    return phi


def gamma_mask(limit: int) -> np.ndarray:
    """Boolean array m with m[n] == (n in Gamma) for 0 <= n <= limit; m[0] is False."""
    n = np.arange(limit + 1, dtype=np.int64)
    n[0] = 1
    low = n & -n
    v = np.log2(low).round().astype(np.int64)
    mask = (v % 2) == 1
    mask[0] = False
    return mask
