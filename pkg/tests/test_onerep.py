import random

import pytest

from varpat.core import (
    INFINITE,
    NotOneRepVar,
    Var,
    apply_substitution,
    hamming_distance,
    is_finite,
)
from varpat.onerep import (
    PtasConfig,
    approx2_1repvar,
    approx2_search,
    decompose_one_rep,
    min_mismatch_1repvar,
    ptas_1repvar,
    ptas_ratio,
    ptas_search,
)
from helpers import assert_valid_witness, naive_min_mismatch, pat


def random_onerep(rng, max_occ=3, max_extra=2, sigma=2, max_run=2):
    names = ["x"] * rng.randint(1, max_occ)
    for i in range(rng.randint(0, max_extra)):
        names.insert(rng.randint(0, len(names)), f"y{i}")
    syms = []
    for name in names:
        syms.extend(rng.randint(1, sigma) for _ in range(rng.randint(0, max_run)))
        syms.append(name)
    syms.extend(rng.randint(1, sigma) for _ in range(rng.randint(0, max_run)))
    return pat(*syms)


def test_decompose_blocks_and_gaps():
    # terminals between x occurrences stay inside the block; the run
    # after z attaches to the final block
    p = pat("y", "x", 1, "x", "z", 2, "x")
    d = decompose_one_rep(p)
    assert d.var == "x"
    assert d.blocks == ((Var("x"), 1, Var("x")), (2, Var("x")))
    assert d.gaps == ((Var("y"),), (Var("z"),), ())
    assert d.block_count == 2
    assert d.occurrences == 3


def test_decompose_terminal_absorption():
    # terminals adjacent to x merge into its blocks
    d = decompose_one_rep(pat(1, "x", 2, "y"))
    assert d.blocks == ((1, Var("x"), 2),)
    assert d.gaps == ((), (Var("y"),))


def test_decompose_rejects_two_repeated():
    with pytest.raises(NotOneRepVar):
        decompose_one_rep(pat("x", "y", "x", "y"))


def test_decompose_needs_a_variable():
    with pytest.raises(NotOneRepVar):
        decompose_one_rep(pat(1, 2))


def test_worked_example_xyx():
    # x y x against "abcab": distance 0; several witnesses exist, any
    # valid one is acceptable
    p = pat("x", "y", "x")
    w = (1, 2, 3, 1, 2)
    res = min_mismatch_1repvar(w, p)
    assert res.distance == 0
    assert_valid_witness(p, w, res.witness, 0)


def test_vs_naive_random():
    rng = random.Random(40)
    for _ in range(200):
        p = random_onerep(rng)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 11)))
        want = naive_min_mismatch(w, p, sigma=2)
        res = min_mismatch_1repvar(w, p)
        assert res.distance == (INFINITE if want is None else want), (p, w)
        if is_finite(res.distance):
            assert_valid_witness(p, w, res.witness, res.distance)


def test_regular_pattern_through_onerep():
    # patterns without repeats solve through the same entry point
    rng = random.Random(41)
    for _ in range(60):
        p = random_onerep(rng, max_occ=1, max_extra=2)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 9)))
        want = naive_min_mismatch(w, p, sigma=2)
        res = min_mismatch_1repvar(w, p)
        assert res.distance == (INFINITE if want is None else want)


def test_terminal_only_pattern():
    res = min_mismatch_1repvar((1, 2), pat(1, 1))
    assert res.distance == 1
    res = min_mismatch_1repvar((1,), pat(1, 1))
    assert res.distance == INFINITE


def test_approx2_bounds():
    rng = random.Random(42)
    for _ in range(150):
        p = random_onerep(rng)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 10)))
        want = naive_min_mismatch(w, p, sigma=2)
        got = approx2_1repvar(w, p)
        if want is None:
            assert got == INFINITE
        else:
            assert want <= got <= 2 * want, (p, w, want, got)


def test_approx2_exact_when_image_is_factor():
    # plant a repeated factor image; the factor search must find it
    p = pat("x", 1, "x")
    w = (2, 2, 1, 2, 2)  # x -> "bb"
    assert approx2_1repvar(w, p) == 0
    search = approx2_search(w, p)
    assert search.best_image == (2, 2)
    wit = search.witness()
    assert hamming_distance(apply_substitution(p, wit), w) == 0


def test_ptas_ratio_values():
    assert ptas_ratio(1, 2) == 2.0
    assert ptas_ratio(2, 2) == 2.0  # root = 0 guard
    assert ptas_ratio(3, 2) == 2.0  # sampled bound exceeds 2 at r=3
    assert 1.0 < ptas_ratio(100, 2) < 1.2
    assert ptas_ratio(100, 4) > ptas_ratio(100, 2)


def test_ptas_config_validation():
    with pytest.raises(ValueError):
        PtasConfig(0, 2)
    with pytest.raises(ValueError):
        PtasConfig(3, 0)


def test_ptas_bounds():
    rng = random.Random(43)
    cfg = PtasConfig(3, 2)
    bound = min(2.0, ptas_ratio(3, 2))
    for _ in range(100):
        p = random_onerep(rng)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 10)))
        want = naive_min_mismatch(w, p, sigma=2)
        got = ptas_1repvar(w, p, cfg)
        if want is None:
            assert got == INFINITE
        else:
            assert want <= got <= bound * want


def test_ptas_without_union_still_sound():
    rng = random.Random(44)
    cfg = PtasConfig(2, 2)
    for _ in range(60):
        p = random_onerep(rng)
        w = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 9)))
        want = naive_min_mismatch(w, p, sigma=2)
        got = ptas_1repvar(w, p, cfg, union_approx2=False)
        if want is not None:
            assert got >= want  # never better than optimal
        search = ptas_search(w, p, cfg, union_approx2=False)
        if search.best_image is not None and is_finite(search.best):
            wit = search.witness()
            assert hamming_distance(apply_substitution(p, wit), w) == search.best
