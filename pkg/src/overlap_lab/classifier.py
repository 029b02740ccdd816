"""Exact-overlap decision for the projections C_t, t = p/q rational.

C_t has an exact overlap iff neither the reduced numerator nor the reduced
denominator lies in Gamma. Since C_t = t * C_{1/t}, a value t > 1 is decided
through 1/t, and t = 1 always overlaps (the maps for 3t and 3 coincide).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .numtheory import GammaWitness, gamma_membership, in_gamma

__all__ = [
    "ReducedRational",
    "OverlapClassification",
    "classify",
    "membership_in_W",
    "W_VARIANTS",
]

Regime = Literal["proper_fraction", "unit", "reciprocal"]
W_VARIANTS = ("W", "W_hat", "W_tilde")


@dataclass(frozen=True)
class ReducedRational:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p and q must be positive, got {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    @classmethod
    def from_pair(cls, a: int, b: int) -> "ReducedRational":
        if a < 1 or b < 1:
            raise ValueError(f"numerator and denominator must be positive, got {a}/{b}")
        g = math.gcd(a, b)
        return cls(a // g, b // g)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def reciprocal(self) -> "ReducedRational":
        return ReducedRational(self.q, self.p)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class OverlapClassification:
    p: int
    q: int
    t: ReducedRational
    overlap: bool
    gamma_p: GammaWitness | None
    gamma_q: GammaWitness | None
    regime: Regime

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "reduced_p": self.t.p,
            "reduced_q": self.t.q,
            "overlap": self.overlap,
            "gamma_p": None if self.gamma_p is None else self.gamma_p.to_dict(),
            "gamma_q": None if self.gamma_q is None else self.gamma_q.to_dict(),
            "regime": self.regime,
        }


def classify(a: int, b: int) -> OverlapClassification:
    """Decide whether C_{a/b} has an exact overlap. Input need not be reduced."""
    t = ReducedRational.from_pair(a, b)
    gamma_p = gamma_membership(t.p)
    gamma_q = gamma_membership(t.q)
    if t.p == t.q:
        regime = "unit"
    elif t.p < t.q:
        regime = "proper_fraction"
    else:
        regime = "reciprocal"
    # For t = 1 both witnesses are absent (1 is not in Gamma), so the rule
    # below already yields overlap=True, matching the coinciding maps.
    overlap = gamma_p is None and gamma_q is None
    return OverlapClassification(
        p=a, q=b, t=t, overlap=overlap, gamma_p=gamma_p, gamma_q=gamma_q, regime=regime
    )


def membership_in_W(p: int, q: int, variant: str = "W") -> bool:
    """Membership of (p, q) in W, W_hat or W_tilde.

    W       coprime, p < q, p and q both outside Gamma (overlap, t < 1)
    W_hat   coprime, p < q, p or q in Gamma (no overlap, t < 1)
    W_tilde coprime, p and q both outside Gamma (overlap, any t > 0)
    """
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be positive, got ({p}, {q})")
    if variant not in W_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {W_VARIANTS}")
    if math.gcd(p, q) != 1:
        return False
    outside = not in_gamma(p) and not in_gamma(q)
    if variant == "W_tilde":
        return outside
    if p >= q:
        return False
    return outside if variant == "W" else not outside
