"""Three independent exact-overlap deciders for t = p/q with p < q.

* ``find_overlap_witness``: breadth-first search over difference states
  ``s -> 4s + (a - b)``, which returns explicit equal-length digit blocks.
* ``no_overlap_by_divisibility``: whether ``1 + x^tau`` divides
  ``(1 + x^3p)(1 + x^3q)`` for some ``tau = 2^(2ell - 1)``.
* ``rank_equality_holds``: the same divisibility phrased as solvability of
  the banded linear system ``A c = b``, checked by exact integer elimination.

All three work on the integer digit set ``D = {0, 3p, 3q, 3p + 3q}``, which is
the scaled digit set ``q * {0, 3t, 3, 3t + 3}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classifier import ReducedRational

__all__ = [
    "DigitSet",
    "OverlapWitness",
    "CoefficientMatrix",
    "find_overlap_witness",
    "reachable_difference_states",
    "exhaustive_depth",
    "check_polynomial_divisibility",
    "no_overlap_by_divisibility",
    "valid_ells",
    "build_rank_instance",
    "bareiss_rank",
    "rank_mod_prime",
    "rank_equality_holds",
    "RANK_PRIME",
]

# 2**62 - 57 is prime; used only for the optional modular pre-check.
RANK_PRIME = 2**62 - 57

_SYMBOLS = ("0", "3t", "3", "3t+3")


def _as_proper(t) -> ReducedRational:
    if not isinstance(t, ReducedRational):
        p, q = t
        t = ReducedRational(p, q)
    if t.p >= t.q:
        raise ValueError(f"expected p < q, got {t}")
    return t


def _check_pair(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be positive, got ({p}, {q})")
    if p >= q:
        raise ValueError(f"expected p < q, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) is not coprime")


@dataclass(frozen=True)
class DigitSet:
    p: int
    q: int

    @property
    def digits(self) -> tuple[int, int, int, int]:
        return (0, 3 * self.p, 3 * self.q, 3 * self.p + 3 * self.q)

    def symbol(self, digit: int) -> str:
        """Render a scaled digit in the unscaled 0, 3t, 3, 3t+3 notation."""
        return _SYMBOLS[self.digits.index(digit)]

    def __iter__(self):
        return iter(self.digits)


@dataclass(frozen=True)
class OverlapWitness:
    t: ReducedRational
    depth: int
    block_i: tuple[int, ...]
    block_j: tuple[int, ...]

    def is_valid(self) -> bool:
        """Recheck the integer identity sum (i_n - j_n) 4^(k-n) == 0 from scratch."""
        digits = set(DigitSet(self.t.p, self.t.q).digits)
        if len(self.block_i) != self.depth or len(self.block_j) != self.depth:
            return False
        if self.block_i == self.block_j:
            return False
        if not set(self.block_i) <= digits or not set(self.block_j) <= digits:
            return False
        k = self.depth
        total = sum((a - b) * 4 ** (k - n) for n, (a, b) in enumerate(zip(self.block_i, self.block_j), 1))
        return total == 0

    def to_dict(self, human: bool = False) -> dict:
        if human:
            ds = DigitSet(self.t.p, self.t.q)
            bi = [ds.symbol(d) for d in self.block_i]
            bj = [ds.symbol(d) for d in self.block_j]
        else:
            bi, bj = list(self.block_i), list(self.block_j)
        return {"p": self.t.p, "q": self.t.q, "depth": self.depth, "block_i": bi, "block_j": bj}


def exhaustive_depth(t) -> int:
    """Depth beyond which no new minimal witness can appear: 2(p+q)+1."""
    t = _as_proper(t)
    return 2 * (t.p + t.q) + 1


def _search(t: ReducedRational, max_depth: int | None):
    digits = DigitSet(t.p, t.q).digits
    bound = t.p + t.q
    pairs = [(a, b) for a in digits for b in digits]  # lexicographic
    # parent[s] = (previous state or None for the start, digit pair)
    parent: dict[int, tuple[int | None, tuple[int, int]]] = {}

    def unwind(state: int | None, last: tuple[int, int]):
        chain = [last]
        while state is not None:
            prev, pair = parent[state]
            chain.append(pair)
            state = prev
        chain.reverse()
        return tuple(a for a, _ in chain), tuple(b for _, b in chain)

    # Swapping the blocks of a witness gives another witness, so the first
    # unequal pair is taken with a > b.
    frontier = []
    for a, b in pairs:
        s = a - b
        if a > b and abs(s) <= bound and s not in parent:
            parent[s] = (None, (a, b))
            frontier.append(s)

    depth = 1
    while frontier and (max_depth is None or depth < max_depth):
        nxt = []
        for s in frontier:
            for a, b in pairs:
                s2 = 4 * s + a - b
                if s2 == 0:
                    bi, bj = unwind(s, (a, b))
                    return OverlapWitness(t, depth + 1, bi, bj), parent
                if abs(s2) <= bound and s2 not in parent:
                    parent[s2] = (s, (a, b))
                    nxt.append(s2)
        frontier = nxt
        depth += 1
    return None, parent


def find_overlap_witness(t, max_depth: int | None = None) -> OverlapWitness | None:
    """Minimal-depth exact-overlap witness for p/q (p < q), or None.

    The returned witness is the lexicographically least one (over the sequence
    of digit pairs) among minimal-depth witnesses whose first differing digit is
    larger in ``block_i``. With ``max_depth=None`` the search is exhaustive:
    states satisfy |s| <= p + q, so a witness, if any, has depth at most
    2(p+q)+1.
    """
    t = _as_proper(t)
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    witness, _ = _search(t, max_depth)
    return witness


def reachable_difference_states(t) -> set[int]:
    """Every nonzero difference state the search reaches (full, no depth cap).

    Meaningful for pairs without overlap, where the search runs to exhaustion.
    """
    t = _as_proper(t)
    _, parent = _search(t, None)
    return set(parent)


def valid_ells(p: int, q: int) -> list[int]:
    """All ell with tau_ell = 2^(2ell-1) <= 3p + 3q."""
    top = 3 * p + 3 * q
    out = []
    ell = 1
    while 2 ** (2 * ell - 1) <= top:
        out.append(ell)
        ell += 1
    return out


def check_polynomial_divisibility(p: int, q: int, ell: int) -> bool:
    """Does 1 + x^tau divide 1 + x^3p + x^3q + x^(3p+3q), tau = 2^(2ell-1)?

    Works modulo x^tau + 1: x^e folds onto x^(e mod tau) with sign
    (-1)^(e div tau).
    """
    _check_pair(p, q)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    tau = 2 ** (2 * ell - 1)
    if tau > 3 * p + 3 * q:
        raise ValueError(f"tau={tau} exceeds the dividend degree {3 * p + 3 * q}")
    rem = [0] * tau
    for e in (0, 3 * p, 3 * q, 3 * p + 3 * q):
        quo, r = divmod(e, tau)
        rem[r] += -1 if quo % 2 else 1
    return not any(rem)


def no_overlap_by_divisibility(t) -> int | None:
    """Smallest ell for which the divisibility holds (certifying no overlap), else None."""
    t = _as_proper(t)
    for ell in valid_ells(t.p, t.q):
        if check_polynomial_divisibility(t.p, t.q, ell):
            return ell
    return None


@dataclass(frozen=True)
class CoefficientMatrix:
    """The banded 0/1 system A c = b.

    Column n (1-based) of A is the coefficient vector of x^(n-1) (1 + x^tau);
    b is the coefficient vector of 1 + x^3p + x^3q + x^(3p+3q).
    """

    p: int
    q: int
    ell: int
    A: list[list[int]] = field(repr=False)
    b: list[int] = field(repr=False)

    @property
    def tau(self) -> int:
        return 2 ** (2 * self.ell - 1)

    @property
    def rows(self) -> int:
        return len(self.A)

    @property
    def cols(self) -> int:
        return len(self.A[0])

    def augmented(self) -> list[list[int]]:
        return [row + [bi] for row, bi in zip(self.A, self.b)]


def build_rank_instance(p: int, q: int, ell: int) -> CoefficientMatrix:
    _check_pair(p, q)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    tau = 2 ** (2 * ell - 1)
    deg = 3 * p + 3 * q
    if tau > deg:
        raise ValueError(f"tau={tau} exceeds 3p+3q={deg}")
    nrows, ncols = deg + 1, deg - tau + 1
    A = [[0] * ncols for _ in range(nrows)]
    for n in range(ncols):
        A[n][n] = 1
        A[n + tau][n] = 1
    b = [0] * nrows
    for e in (0, 3 * p, 3 * q, deg):
        b[e] = 1
    return CoefficientMatrix(p, q, ell, A, b)


def bareiss_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so all divisions are exact.
    """
    M = [list(map(int, row)) for row in matrix]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv_row = next((i for i in range(r, m) if M[i][c]), None)
        if piv_row is None:
            continue
        if piv_row != r:
            M[r], M[piv_row] = M[piv_row], M[r]
        Mr = M[r]
        piv = Mr[c]
        nz = [j for j in range(c + 1, n) if Mr[j]]
        for i in range(r + 1, m):
            Mi = M[i]
            a = Mi[c]
            if piv == prev:
                # (piv*x - a*y) / prev reduces to x - a*y/prev; zero rows untouched
                if a:
                    for j in nz:
                        Mi[j] -= a * Mr[j] // prev
            elif a:
                for j in range(c + 1, n):
                    Mi[j] = (piv * Mi[j] - a * Mr[j]) // prev
            else:
                for j in range(c + 1, n):
                    if Mi[j]:
                        Mi[j] = piv * Mi[j] // prev
            Mi[c] = 0
        prev = piv
        r += 1
    return r


def rank_mod_prime(matrix, prime: int = RANK_PRIME) -> int:
    """Rank over GF(prime). A lower bound for the rational rank."""
    M = [[x % prime for x in row] for row in matrix]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        piv_row = next((i for i in range(r, m) if M[i][c]), None)
        if piv_row is None:
            continue
        M[r], M[piv_row] = M[piv_row], M[r]
        Mr = M[r]
        inv = pow(Mr[c], -1, prime)
        for i in range(r + 1, m):
            a = M[i][c]
            if a:
                f = a * inv % prime
                Mi = M[i]
                for j in range(c, n):
                    if Mr[j]:
                        Mi[j] = (Mi[j] - f * Mr[j]) % prime
        r += 1
    return r


def rank_equality_holds(p: int, q: int, ell: int, precheck: bool = False) -> bool:
    """rank(A | b) == rank(A), by exact elimination.

    With ``precheck`` modular ranks are computed first. A modular rank never
    exceeds the exact one, so it can only settle the case where A has full
    column rank and the augmented matrix gains a rank mod the prime; every
    other case falls through to exact elimination.
    """
    inst = build_rank_instance(p, q, ell)
    aug = inst.augmented()
    if precheck:
        if rank_mod_prime(inst.A) == inst.cols and rank_mod_prime(aug) == inst.cols + 1:
            return False
    return bareiss_rank(inst.A) == bareiss_rank(aug)
