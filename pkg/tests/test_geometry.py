import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from overlap_lab.classifier import classify, membership_in_W
from overlap_lab.density import enumerate_counts
from overlap_lab.geometry import (
    WidthOverflowError,
    first_collapse_depth,
    grid_to_pgm,
    grid_to_svg,
    level_endpoints,
    measure_and_dimension,
    render_W_grid,
)
from overlap_lab.oracles import find_overlap_witness


def coprime_pairs(max_sum):
    for s in range(3, max_sum + 1):
        for p in range(1, (s + 1) // 2):
            if math.gcd(p, s - p) == 1:
                yield p, s - p


def brute_endpoints(p, q, n):
    digits = (0, 3 * p, 3 * q, 3 * p + 3 * q)
    return sorted({sum(d * 4 ** (n - m) for m, d in enumerate(block, 1)) for block in itertools.product(digits, repeat=n)})


def brute_measure(p, q, n):
    """Union length of [v, v + (1+t)/4^n] with everything held as Fractions."""
    t = Fraction(p, q)
    length = (1 + t) / 4**n
    starts = sorted(Fraction(v, q * 4**n) for v in brute_endpoints(p, q, n))
    total = Fraction(0)
    cur_lo, cur_hi = starts[0], starts[0] + length
    for s in starts[1:]:
        if s <= cur_hi:
            cur_hi = max(cur_hi, s + length)
        else:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = s, s + length
    return total + (cur_hi - cur_lo)


def test_level_one_half():
    approx = level_endpoints((1, 2), 1)
    assert approx.endpoints.tolist() == [0, 3, 6, 9]
    assert approx.D_n == 4
    assert approx.interval_length == Fraction(3, 8)


def test_collapse_counts_by_brute_force():
    # frozen from brute_endpoints; both witnesses also appear shifted by one digit,
    # so more than one pair collapses
    assert len(brute_endpoints(1, 3, 2)) == 14
    assert level_endpoints((1, 3), 2).D_n == 14
    assert len(brute_endpoints(1, 11, 3)) == 60
    assert level_endpoints((1, 11), 3).D_n == 60


@pytest.mark.parametrize("pq", [(1, 2), (1, 3), (2, 3), (1, 11), (3, 8), (5, 7)])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_endpoints_and_measure_match_brute_force(pq, n):
    approx = level_endpoints(pq, n)
    assert approx.endpoints.tolist() == brute_endpoints(*pq, n)
    p, q = pq
    assert approx.endpoints.max() <= (3 * p + 3 * q) * (4**n - 1) // 3
    assert 1 <= approx.D_n <= 4**n
    assert measure_and_dimension(pq, n).measure == brute_measure(p, q, n)


def test_measure_one_half_is_interval():
    for n in range(1, 9):
        assert measure_and_dimension((1, 2), n).measure == Fraction(3, 2)


def test_measure_examples():
    est = measure_and_dimension((1, 3), 6)
    assert est.measure < Fraction(4, 3) and est.dim_estimate < 1
    est = measure_and_dimension((2, 3), 6)
    assert est.measure >= Fraction(1, 3)
    assert est.D_n == 4**6


def test_measure_monotone_and_bounded():
    for pq in [(1, 3), (1, 11), (2, 3), (3, 5), (1, 2), (4, 9), (5, 13)]:
        t = Fraction(*pq)
        prev = None
        for n in range(1, 8):
            m = measure_and_dimension(pq, n).measure
            assert 0 < m <= 1 + t
            if prev is not None:
                assert m <= prev
            prev = m


def test_no_overlap_endpoints_all_distinct():
    for p, q in coprime_pairs(16):
        if classify(p, q).overlap:
            continue
        for n in range(1, 7):
            v = level_endpoints((p, q), n).endpoints
            assert len(v) == 4**n
            assert np.all(np.diff(v) >= 1)
            assert measure_and_dimension((p, q), n).measure >= Fraction(1, q)


def test_collapse_depth_equals_witness_depth():
    for p, q in coprime_pairs(24):
        overlap = classify(p, q).overlap
        w = find_overlap_witness((p, q))
        assert (w is not None) == overlap
        if overlap:
            assert first_collapse_depth((p, q), w.depth) == w.depth
        else:
            assert first_collapse_depth((p, q), min(8, 2 * (p + q) + 1)) is None


def test_submultiplicative_dimension_bound():
    for pq in [(1, 3), (1, 11), (3, 5)]:
        k = find_overlap_witness(pq).depth
        Dk = level_endpoints(pq, k).D_n
        bound = math.log(Dk) / (k * math.log(4))
        assert bound < 1
        for m in range(1, 8 // k + 1):
            assert measure_and_dimension(pq, m * k).dim_estimate <= bound + 1e-12


def test_width_overflow():
    with pytest.raises(WidthOverflowError):
        level_endpoints((1, 3), 40)
    with pytest.raises(ValueError):
        level_endpoints((3, 1), 2)


def test_grid_examples():
    assert render_W_grid(1).tolist() == [[True]]
    assert render_W_grid(2).tolist() == [[True, False], [False, False]]
    g = render_W_grid(100)
    assert int(g.sum()) == enumerate_counts(100).count_W_tilde
    for q in range(1, 101, 7):
        for p in range(1, 101, 3):
            assert g[q - 1, p - 1] == membership_in_W(p, q, "W_tilde")


def test_pgm_layout():
    g = np.array([[True, False, False], [False, False, True]])
    data = grid_to_pgm(g)
    assert data == b"P5\n3 2\n255\n" + bytes([0, 255, 255, 255, 255, 0])


def test_svg_one_rect_per_cell():
    g = render_W_grid(10)
    svg = grid_to_svg(g)
    assert svg.count('fill="black"') == int(g.sum())
    assert svg.startswith("<svg")
