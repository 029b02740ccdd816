"""Level-n approximations of C_t on an exact integer grid.

A level-n cylinder of C_t is ``[f(0), f(0) + (1 + t) / 4^n]``. Multiplying by
``q * 4^n`` puts every left endpoint on an integer ``v = sum d_m 4^(n-m)``
with ``d_m`` in ``{0, 3p, 3q, 3p + 3q}`` and every cylinder length at ``p + q``,
so counts and measures are computed without floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classifier import ReducedRational
from .numtheory import gamma_mask

__all__ = [
    "WidthOverflowError",
    "LevelApproximation",
    "MeasureEstimate",
    "level_endpoints",
    "measure_and_dimension",
    "first_collapse_depth",
    "render_W_grid",
    "grid_to_pgm",
    "grid_to_svg",
    "DEFAULT_MAX_LEVEL",
]

# Largest scaled coordinate we allow: int64 with headroom for one more 4v + d step.
_WIDTH_LIMIT = 2**62
DEFAULT_MAX_LEVEL = 8


class WidthOverflowError(OverflowError):
    """Scaled endpoints for the requested level do not fit in int64."""


def _as_proper(t) -> ReducedRational:
    if not isinstance(t, ReducedRational):
        t = ReducedRational(*t)
    if t.p >= t.q:
        raise ValueError(f"expected p < q, got {t}")
    return t


def _check_width(t: ReducedRational, n: int) -> None:
    if n < 1:
        raise ValueError("level must be >= 1")
    if 3 * (t.p + t.q) * 4**n >= _WIDTH_LIMIT:
        raise WidthOverflowError(
            f"level {n} for t={t} needs {(3 * (t.p + t.q) * 4**n).bit_length()} bits; int64 holds 62 here"
        )


@dataclass(frozen=True)
class LevelApproximation:
    t: ReducedRational
    level: int
    endpoints: np.ndarray = field(repr=False)

    @property
    def D_n(self) -> int:
        return len(self.endpoints)

    @property
    def scaled_length(self) -> int:
        """Cylinder length in units of 1 / (q 4^n)."""
        return self.t.p + self.t.q

    @property
    def interval_length(self) -> Fraction:
        return Fraction(self.t.p + self.t.q, self.t.q * 4**self.level)


@dataclass(frozen=True)
class MeasureEstimate:
    t: ReducedRational
    level: int
    measure: Fraction
    D_n: int
    dim_estimate: float

    def to_dict(self) -> dict:
        return {
            "p": self.t.p,
            "q": self.t.q,
            "level": self.level,
            "measure_num": self.measure.numerator,
            "measure_den": self.measure.denominator,
            "D_n": self.D_n,
            "dim_estimate": self.dim_estimate,
        }


def _iter_levels(t: ReducedRational, n: int):
    digits = np.array([0, 3 * t.p, 3 * t.q, 3 * t.p + 3 * t.q], dtype=np.int64)
    v = np.zeros(1, dtype=np.int64)
    for level in range(1, n + 1):
        v = np.unique((4 * v[:, None] + digits[None, :]).ravel())
        yield level, v


def level_endpoints(t, n: int) -> LevelApproximation:
    """Sorted distinct scaled left endpoints at level n (V_0 = {0}, V_m+1 = 4 V_m + D)."""
    t = _as_proper(t)
    _check_width(t, n)
    for _, v in _iter_levels(t, n):
        pass
    return LevelApproximation(t, n, v)


def _measure(approx: LevelApproximation) -> Fraction:
    v = approx.endpoints
    length = approx.scaled_length
    covered = int(np.minimum(np.diff(v), length).sum()) + length
    return Fraction(covered, approx.t.q * 4**approx.level)


def measure_and_dimension(t, n: int) -> MeasureEstimate:
    """Exact measure of the level-n cylinder union and log(D_n) / (n log 4)."""
    approx = level_endpoints(t, n)
    dim = math.log(approx.D_n) / (n * math.log(4))
    return MeasureEstimate(approx.t, n, _measure(approx), approx.D_n, dim)


def first_collapse_depth(t, max_level: int = DEFAULT_MAX_LEVEL) -> int | None:
    """Smallest n <= max_level with D_n < 4^n, i.e. two level-n words share a point."""
    t = _as_proper(t)
    _check_width(t, max_level)
    for level, v in _iter_levels(t, max_level):
        if len(v) < 4**level:
            return level
    return None


def render_W_grid(N: int) -> np.ndarray:
    """Boolean N x N array; entry [q-1, p-1] is True iff (p, q) is in W_tilde."""
    if N < 1:
        raise ValueError("N must be >= 1")
    outside = ~gamma_mask(N)[1:]
    idx = np.arange(1, N + 1, dtype=np.int64)
    grid = np.zeros((N, N), dtype=bool)
    for q in range(1, N + 1):
        if outside[q - 1]:
            grid[q - 1] = (np.gcd(idx, q) == 1) & outside
    return grid


def grid_to_pgm(grid: np.ndarray) -> bytes:
    """Binary PGM, one byte per cell, row-major with q down and p right; True -> 0 (black)."""
    rows, cols = grid.shape
    header = f"P5\n{cols} {rows}\n255\n".encode("ascii")
    body = np.where(grid, 0, 255).astype(np.uint8).tobytes(order="C")
    return header + body


def grid_to_svg(grid: np.ndarray, title: str | None = None) -> str:
    rows, cols = grid.shape
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cols}" height="{rows}" '
        f'viewBox="0 0 {cols} {rows}" shape-rendering="crispEdges">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    for r, c in zip(*np.nonzero(grid)):
        out.append(f'<rect x="{c}" y="{r}" width="1" height="1" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
