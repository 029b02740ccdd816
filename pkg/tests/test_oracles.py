import itertools
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from overlap_lab.classifier import ReducedRational, classify
from overlap_lab.numtheory import gamma_membership
from overlap_lab.oracles import (
    DigitSet,
    OverlapWitness,
    bareiss_rank,
    build_rank_instance,
    check_polynomial_divisibility,
    exhaustive_depth,
    find_overlap_witness,
    no_overlap_by_divisibility,
    rank_equality_holds,
    rank_mod_prime,
    reachable_difference_states,
    valid_ells,
)

X = sympy.Symbol("x")


def coprime_pairs(max_sum):
    for s in range(3, max_sum + 1):
        for p in range(1, (s + 1) // 2):
            if math.gcd(p, s - p) == 1:
                yield p, s - p


def brute_min_overlap_depth(p, q, max_k):
    """Smallest k with two distinct blocks of length k sharing sum d_n 4^(k-n)."""
    digits = DigitSet(p, q).digits
    for k in range(1, max_k + 1):
        seen = set()
        for block in itertools.product(digits, repeat=k):
            v = sum(d * 4 ** (k - n) for n, d in enumerate(block, 1))
            if v in seen:
                return k
            seen.add(v)
    return None


def sympy_divides(p, q, ell):
    tau = 2 ** (2 * ell - 1)
    f = sympy.Poly(1 + X ** (3 * p) + X ** (3 * q) + X ** (3 * p + 3 * q), X)
    g = sympy.Poly(1 + X**tau, X)
    return f.rem(g).is_zero


# -- digit set ---------------------------------------------------------------


def test_digit_set():
    ds = DigitSet(1, 3)
    assert ds.digits == (0, 3, 9, 12)
    assert [ds.symbol(d) for d in ds] == ["0", "3t", "3", "3t+3"]


# -- witness search ------------------------------------------------------------


def test_witness_one_third():
    w = find_overlap_witness(ReducedRational(1, 3), max_depth=4)
    assert w.depth == 2
    assert (w.block_i, w.block_j) == ((3, 0), (0, 12))
    assert 3 * 4 + (0 - 12) == 0
    assert w.is_valid()


def test_witness_one_eleventh():
    w = find_overlap_witness((1, 11), max_depth=4)
    assert w.depth == 3
    assert w.block_i == (3, 0, 0)
    assert w.block_j == (0, 3, 36)
    assert w.to_dict(human=True)["block_j"] == ["0", "3t", "3t+3"]


def test_no_witness_one_half():
    assert exhaustive_depth((1, 2)) == 7
    assert find_overlap_witness((1, 2), max_depth=7) is None
    assert find_overlap_witness((1, 2)) is None


def test_depth_limit_respected():
    assert find_overlap_witness((1, 11), max_depth=2) is None
    assert find_overlap_witness((1, 11), max_depth=3).depth == 3


def test_witness_preconditions():
    with pytest.raises(ValueError):
        find_overlap_witness((3, 2))
    with pytest.raises(ValueError):
        find_overlap_witness((2, 4))
    with pytest.raises(ValueError):
        find_overlap_witness((1, 3), max_depth=0)


def test_witness_json():
    w = find_overlap_witness((1, 3))
    assert w.to_dict() == {"p": 1, "q": 3, "depth": 2, "block_i": [3, 0], "block_j": [0, 12]}


def test_witness_depth_matches_brute_force():
    for p, q in coprime_pairs(14):
        w = find_overlap_witness((p, q))
        brute = brute_min_overlap_depth(p, q, 4)
        if w is not None and w.depth <= 4:
            assert brute == w.depth, (p, q)
        else:
            assert brute is None, (p, q)


def test_witnesses_valid_and_tampering_detected():
    for p, q in coprime_pairs(40):
        w = find_overlap_witness((p, q))
        if w is None:
            continue
        assert w.is_valid()
        # changing a single digit shifts the sum by a nonzero multiple of a power of 4
        digits = DigitSet(p, q).digits
        other = next(d for d in digits if d != w.block_j[-1])
        assert not OverlapWitness(w.t, w.depth, w.block_i, w.block_j[:-1] + (other,)).is_valid()
        assert not OverlapWitness(w.t, w.depth, w.block_i, w.block_i).is_valid()


def test_search_reaches_full_closure_for_no_overlap_pairs():
    for p, q in coprime_pairs(30):
        if classify(p, q).overlap:
            continue
        digits = DigitSet(p, q).digits
        bound = p + q
        deltas = {a - b for a in digits for b in digits}
        closure = {a - b for a in digits for b in digits if a > b and abs(a - b) <= bound}
        while True:
            grown = closure | {4 * s + d for s in closure for d in deltas if abs(4 * s + d) <= bound}
            if grown == closure:
                break
            closure = grown
        assert 0 not in closure
        assert reachable_difference_states((p, q)) == closure


# -- polynomial divisibility ----------------------------------------------------


def test_divisibility_examples():
    assert check_polynomial_divisibility(1, 2, 1)
    assert check_polynomial_divisibility(3, 8, 2)
    assert not check_polynomial_divisibility(1, 3, 1)
    assert sympy.rem(1 + X**3 + X**9 + X**12, 1 + X**2, X) == 2


def test_divisibility_degree_precondition():
    assert valid_ells(1, 2) == [1, 2]
    with pytest.raises(ValueError):
        check_polynomial_divisibility(1, 2, 3)


def test_divisibility_matches_sympy():
    for p, q in coprime_pairs(24):
        for ell in valid_ells(p, q):
            assert check_polynomial_divisibility(p, q, ell) == sympy_divides(p, q, ell), (p, q, ell)


def test_no_overlap_by_divisibility_examples():
    assert no_overlap_by_divisibility((1, 2)) == 1
    assert no_overlap_by_divisibility((3, 8)) == 2
    assert no_overlap_by_divisibility((1, 11)) is None


def test_one_plus_x_always_divides():
    for q in range(2, 101):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                assert (1 + (-1) ** (3 * p)) * (1 + (-1) ** (3 * q)) == 0


# -- rank ----------------------------------------------------------------------


def test_rank_instance_shapes():
    inst = build_rank_instance(1, 2, 1)
    assert (inst.rows, inst.cols) == (10, 8)
    assert [i + 1 for i, v in enumerate(inst.b) if v] == [1, 4, 7, 10]
    inst = build_rank_instance(1, 3, 1)
    assert (inst.rows, inst.cols) == (13, 11)
    assert [i + 1 for i, v in enumerate(inst.b) if v] == [1, 4, 10, 13]
    for p, q in coprime_pairs(20):
        for ell in valid_ells(p, q):
            inst = build_rank_instance(p, q, ell)
            assert [i + 1 for i, r in enumerate(inst.A) if r[0]] == [1, inst.tau + 1]
            for n in range(inst.cols):
                col = [r[n] for r in inst.A]
                assert sum(col) == 2 and col[n] == col[n + inst.tau] == 1


def test_rank_instance_precondition():
    with pytest.raises(ValueError):
        build_rank_instance(1, 2, 3)
    with pytest.raises(ValueError):
        build_rank_instance(2, 1, 1)


def test_rank_examples():
    assert rank_equality_holds(1, 2, 1)
    assert not rank_equality_holds(1, 3, 1)
    assert not rank_equality_holds(1, 3, 2)


def test_rank_matches_sympy_small():
    for p, q in coprime_pairs(10):
        for ell in valid_ells(p, q):
            inst = build_rank_instance(p, q, ell)
            rA = sympy.Matrix(inst.A).rank()
            rAb = sympy.Matrix(inst.augmented()).rank()
            assert bareiss_rank(inst.A) == rA == inst.cols
            assert bareiss_rank(inst.augmented()) == rAb
            assert rank_equality_holds(p, q, ell) == (rA == rAb)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 7).flatmap(
        lambda m: st.integers(1, 7).flatmap(
            lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )
)
def test_bareiss_matches_sympy_random(rows):
    r = bareiss_rank(rows)
    assert r == sympy.Matrix(rows).rank()
    assert rank_mod_prime(rows) == r  # entries are tiny, no prime divides a nonzero minor


def test_precheck_does_not_change_result():
    for p, q in coprime_pairs(20):
        for ell in valid_ells(p, q):
            assert rank_equality_holds(p, q, ell, precheck=True) == rank_equality_holds(p, q, ell)


def test_rank_matches_gamma_ell_small():
    for p, q in coprime_pairs(20):
        for ell in valid_ells(p, q):
            gp, gq = gamma_membership(p), gamma_membership(q)
            in_ell = (gp is not None and gp.ell == ell) or (gq is not None and gq.ell == ell)
            assert rank_equality_holds(p, q, ell) == in_ell
