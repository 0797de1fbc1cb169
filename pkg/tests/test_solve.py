import random

import pytest

from varpat.core import (
    BudgetExceeded,
    INFINITE,
    NotKLocal,
    NotNonCross,
    NotOneRepVar,
    NotRegular,
    UnsupportedClass,
    is_finite,
)
from varpat.oracle import brute_force_min_mismatch
from varpat.sampler import CLASS_NAMES, random_instance
from varpat.solve import ALGORITHMS, solve
from helpers import assert_valid_witness, naive_min_mismatch, pat


@pytest.mark.parametrize("symbols,cls,algo", [
    (("x", 1, "x"), "1Var", "1var"),
    (("x", 1, "y"), "Reg", "fast-reg"),
    (("x", "x", "y", "y"), "NonCross", "noncross"),
    (("x", "y", "x"), "1RepVar", "1rep"),
    (("x", "y", "x", "y"), "2-local", "klocal"),
    ((1, 2), "terminal", "fast-reg"),
])
def test_auto_dispatch(symbols, cls, algo):
    res = solve((1, 2, 1, 2), pat(*symbols))
    assert res.pattern_class == cls
    assert res.algorithm == algo


def test_auto_falls_back_to_oracle():
    res = solve((1, 2, 1, 2), pat("x", "y", "x", "y"), max_k=1)
    assert res.algorithm == "oracle"
    assert res.distance == 0


def test_auto_oversized_is_unsupported():
    with pytest.raises(UnsupportedClass):
        solve(tuple([1, 2] * 10), pat("x", "y", "x", "y"), max_k=1, budget=5)


def test_explicit_oracle_budget_error_passes_through():
    with pytest.raises(BudgetExceeded):
        solve(tuple([1, 2] * 10), pat("x", "y", "x", "y"), algo="oracle",
              budget=5)


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        solve((1,), pat("x"), algo="magic")
    assert "auto" in ALGORITHMS


@pytest.mark.parametrize("algo,symbols,exc", [
    ("1var", ("x", "y"), UnsupportedClass),
    ("exact-reg", ("x", "y", "x"), NotRegular),
    ("fast-reg", ("x", "y", "x"), NotRegular),
    ("noncross", ("x", "y", "x"), NotNonCross),
    ("1rep", ("x", "y", "x", "y"), NotOneRepVar),
])
def test_forced_algorithm_rejects_wrong_class(algo, symbols, exc):
    with pytest.raises(exc):
        solve((1, 2, 1), pat(*symbols), algo=algo)


def test_forced_klocal_bound_too_small():
    with pytest.raises(NotKLocal):
        solve((1, 2, 1, 2), pat("x", "y", "x", "y"), algo="klocal", k=1)


def test_decision_mode_regular():
    # x ab y against bb: distance 1
    p = pat("x", 1, 2, "y")
    w = (2, 2)
    acc = solve(w, p, delta=1)
    assert acc.accepted is True
    assert acc.distance == 1
    rej = solve(w, p, delta=0)
    assert rej.accepted is False
    assert rej.distance == INFINITE
    exact = solve(w, p)
    assert exact.accepted is None
    assert exact.distance == 1


def test_decision_mode_nonregular():
    p = pat("x", "x")
    assert solve((1, 2, 1, 1), p, delta=1).accepted is True
    assert solve((1, 2, 1, 1), p, delta=0).accepted is False
    assert solve((1, 2, 1), p, delta=5).accepted is False  # infeasible


def test_witnesses_verify():
    rng = random.Random(80)
    for cls in CLASS_NAMES:
        for _ in range(15):
            inst = random_instance(cls, rng, word_len=9)
            res = solve(inst.word, inst.pattern)
            if res.witness is not None:
                assert_valid_witness(inst.pattern, inst.word, res.witness,
                                     res.distance)


def test_auto_matches_oracle():
    rng = random.Random(81)
    for cls in CLASS_NAMES:
        for _ in range(12):
            inst = random_instance(cls, rng, word_len=9)
            res = solve(inst.word, inst.pattern)
            want = brute_force_min_mismatch(inst.word, inst.pattern,
                                            sigma=inst.sigma).distance
            assert res.distance == want, (cls, inst.word, inst.pattern)


def test_approximators_within_bounds():
    rng = random.Random(82)
    for _ in range(40):
        inst = random_instance("1rep", rng, word_len=9, sigma=2)
        want = naive_min_mismatch(inst.word, inst.pattern, sigma=2)
        for algo in ("approx2", "ptas"):
            res = solve(inst.word, inst.pattern, algo=algo, sigma=2)
            if want is None:
                assert res.distance == INFINITE
                continue
            assert want <= res.distance <= 2 * want
            if res.witness is not None and is_finite(res.distance):
                assert_valid_witness(inst.pattern, inst.word, res.witness,
                                     res.distance)


def test_strict_gaps_forwarded():
    # strict mode keeps the blocks 1 and 2 apart in the word
    p = pat("x", 1, "y", 2, "z")
    assert solve((1, 2), p).distance == 0
    assert solve((1, 2), p, strict_gaps=True).distance == INFINITE
    res = solve((1, 3, 2), p, strict_gaps=True)
    assert res.distance == 0
    assert res.witness == {"x": (), "y": (3,), "z": ()}


def test_empty_word():
    res = solve((), pat("x"))
    assert res.distance == 0
    assert res.witness == {"x": ()}


def test_result_dict_shape():
    d = solve((1, 2, 1), pat("x", "x"), delta=0).as_dict()
    assert d["class"] == "1Var"
    assert d["distance"] is None  # odd length is infeasible
    assert d["accepted"] is False
    d = solve((1, 2), pat("x", 2, "y")).as_dict()
    assert d == {
        "class": "Reg",
        "algorithm": "fast-reg",
        "distance": 0,
        "witness": {"x": [1], "y": []},
        "lcs_queries": d["lcs_queries"],
        "accepted": None,
    }
