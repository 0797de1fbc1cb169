import random

from varpat.core import INFINITE, NotNonCross
import pytest

from varpat.noncross import decompose_noncross, min_mismatch_noncross
from helpers import naive_min_mismatch, pat


def test_decompose_segments():
    # ab xx y ab zzz: three unary segments in order
    p = pat(1, 2, "x", "x", "y", 1, 2, "z", "z", "z")
    segments = decompose_noncross(p)
    names = [s.var_names[0] for s in segments]
    assert names == ["x", "y", "z"]


def test_decompose_rejects_interleaving():
    with pytest.raises(NotNonCross):
        decompose_noncross(pat("x", "y", "x"))


def test_worked_example_xxyy():
    # xx yy against "abab": x -> epsilon, y -> "ab" aligns exactly
    assert min_mismatch_noncross((1, 2, 1, 2), pat("x", "x", "y", "y")) == 0


def test_odd_residue_infeasible():
    assert min_mismatch_noncross((1, 1, 1), pat("x", "x")) == INFINITE


def test_vs_naive_random():
    rng = random.Random(30)
    for _ in range(250):
        syms = []
        for i in range(rng.randint(1, 3)):
            name = f"v{i}"
            for _ in range(rng.randint(1, 2)):
                syms.extend(rng.randint(1, 2) for _ in range(rng.randint(0, 2)))
                syms.append(name)
        syms.extend(rng.randint(1, 2) for _ in range(rng.randint(0, 2)))
        p = pat(*syms)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 11)))
        want = naive_min_mismatch(w, p, sigma=2)
        got = min_mismatch_noncross(w, p)
        assert got == (INFINITE if want is None else want), (p, w)
