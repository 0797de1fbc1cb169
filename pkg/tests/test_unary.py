import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from varpat.core import INFINITE, LengthInfeasible, is_finite
from varpat.unary import median_string, min_mismatch_1var, optimal_unary_assignment
from helpers import naive_min_mismatch, pat


def exhaustive_median(words, sigma):
    m = len(words[0])
    best = None
    for cand in product(range(1, sigma + 1), repeat=m):
        d = sum(sum(1 for a, b in zip(cand, u) if a != b) for u in words)
        if best is None or d < best:
            best = d
    return best


def test_median_worked_examples():
    # {"ab","ab","bb"} -> "ab" at total distance 1
    res = median_string([(1, 2), (1, 2), (2, 2)])
    assert res.median == (1, 2)
    assert res.total_distance == 1
    # {"01","10"}: total 2 either way; ties go to the smaller letter
    res = median_string([(1, 2), (2, 1)])
    assert res.total_distance == 2
    assert res.median == (1, 1)


def test_median_rejects_mixed_lengths():
    with pytest.raises(LengthInfeasible):
        median_string([(1,), (1, 2)])
    with pytest.raises(ValueError):
        median_string([])


def test_median_vs_exhaustive_random():
    rng = random.Random(20)
    for _ in range(300):
        p = rng.randint(1, 5)
        m = rng.randint(1, 4)
        sigma = rng.randint(1, 3)
        words = [tuple(rng.randint(1, sigma) for _ in range(m))
                 for _ in range(p)]
        assert median_string(words, sigma).total_distance == \
            exhaustive_median(words, sigma)


@given(st.integers(1, 3).flatmap(
    lambda m: st.lists(
        st.tuples(*[st.integers(1, 2)] * m), min_size=1, max_size=4)))
def test_median_optimal_property(words):
    res = median_string(words, 2)
    assert res.total_distance == exhaustive_median(words, 2)
    # the reported median realizes the reported distance
    assert sum(sum(1 for a, b in zip(res.median, u) if a != b)
               for u in words) == res.total_distance


def test_block_assignment_worked_examples():
    # blocks x·a and a·x on "ba" and "ab": windows pool to "b","b" and
    # all terminal cells match, so image "b" costs 0 (enumeration: the
    # only competitor "a" costs 2)
    res = optimal_unary_assignment([pat("x", 1), pat(1, "x")],
                                   [(2, 1), (1, 2)], 1)
    assert res.image == (2,)
    assert res.distance == 0
    # bare occurrences on "01" and "10"
    res = optimal_unary_assignment([pat("x"), pat("x")], [(1, 2), (2, 1)], 2)
    assert res.distance == 2


def test_block_assignment_length_check():
    with pytest.raises(LengthInfeasible):
        optimal_unary_assignment([pat("x", 1)], [(1, 1, 1)], 1)


def test_unary_worked_examples():
    # ab x ab x x baab with image "c"
    p = pat(1, 2, "x", 1, 2, "x", "x", 2, 1, 1, 2)
    w = (1, 2, 3, 1, 2, 3, 3, 2, 1, 1, 2)
    res = min_mismatch_1var(w, p)
    assert res.distance == 0
    assert res.image == (3,)
    # xx on "abaa": ties resolve to the lexicographically least image
    res = min_mismatch_1var((1, 2, 1, 1), pat("x", "x"))
    assert res.distance == 1
    assert res.image == (1, 1)


def test_unary_infeasible_lengths():
    # 4 letters cannot split into 3 equal images
    assert min_mismatch_1var((1, 1, 1, 1), pat("x", "x", "x")).distance == INFINITE
    assert min_mismatch_1var((1,), pat("x", 2, 2)).distance == INFINITE


def test_unary_vs_naive():
    rng = random.Random(21)
    for _ in range(250):
        occ = rng.randint(1, 3)
        syms = []
        for _ in range(occ):
            syms.extend(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
            syms.append("x")
        syms.extend(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
        p = pat(*syms)
        n = rng.randint(0, 10)
        w = tuple(rng.randint(1, 3) for _ in range(n))
        want = naive_min_mismatch(w, p, sigma=3)
        got = min_mismatch_1var(w, p, sigma=3)
        assert got.distance == (INFINITE if want is None else want)
        if is_finite(got.distance) and got.image is not None:
            # image realizes the distance
            from varpat.core import apply_substitution, hamming_distance
            assert hamming_distance(
                apply_substitution(p, {"x": got.image}), w) == got.distance
