import random

import pytest

from varpat.classify import (
    LOCALITY_VAR_LIMIT,
    classify,
    count_marked_blocks,
    locality,
    repeated_variable_blocks,
    scope_coincidence_degree,
    validate_marking_sequence,
    variable_skeleton,
)
from varpat.core import BudgetExceeded, Pattern, Var
from varpat.sampler import CLASS_NAMES, random_pattern
from helpers import pat


def test_one_repeated_crossing_example():
    # ab x y ab z xx baab v: x repeats across y and z
    p = pat(1, 2, "x", "y", 1, 2, "z", "x", "x", 2, 1, 1, 2, "v")
    info = classify(p)
    assert info.is_one_rep_var
    assert not info.is_noncross
    assert not info.is_regular
    assert info.scd == 2
    assert info.repeated_var == "x"
    assert info.x_block_count == 2


def test_two_local_example():
    # ab x y ab z xx bb v ab x: 2-local, e.g. marking v, x, y, z
    p = pat(1, 2, "x", "y", 1, 2, "z", "x", "x", 2, 2, "v", 1, 2, "x")
    info = classify(p)
    assert info.locality == 2
    assert validate_marking_sequence(p, ("v", "x", "y", "z"), 2)
    assert not validate_marking_sequence(p, ("x", "y", "z", "v"), 1)
    assert validate_marking_sequence(p, info.marking_witness, 2)


def test_terminal_only():
    info = classify(pat(1, 2, 2, 1))
    assert info.scd == 0
    assert info.is_regular
    assert info.locality == 0
    assert info.marking_witness == ()
    assert info.repeated_var is None


def test_scd_values():
    assert scope_coincidence_degree(pat("x", "y", "x", "y")) == 2
    assert scope_coincidence_degree(pat("x", "x", "y", "y")) == 1
    assert scope_coincidence_degree(pat("x", "y", "z", "x", "z", "y")) == 3
    assert scope_coincidence_degree(pat("x", 1, 1, "x")) == 1


def test_skeleton_and_blocks():
    p = pat(1, "x", 2, "y", "x")
    assert variable_skeleton(p) == ("x", "y", "x")
    assert count_marked_blocks(("x", "y", "x"), {"x"}) == 2
    assert count_marked_blocks(("x", "y", "x"), {"x", "y"}) == 1
    assert count_marked_blocks(("x", "y", "x"), set()) == 0
    assert repeated_variable_blocks(p, "x") == 2
    assert repeated_variable_blocks(pat("x", 1, "x"), "x") == 1


def test_locality_witness_orders():
    loc, order = locality(pat("x", "y", "x", "y"))
    assert loc == 2
    assert sorted(order) == ["x", "y"]
    assert locality(pat("x"))[0] == 1
    # disjoint scopes take the explicit first-occurrence shortcut
    loc, order = locality(pat("a1", "a1", 3, "b2", "b2"))
    assert loc == 1
    assert order == ("a1", "b2")


def test_validate_rejects_wrong_names():
    p = pat("x", "y")
    assert not validate_marking_sequence(p, ("x",), 2)
    assert not validate_marking_sequence(p, ("x", "z"), 2)


def test_locality_variable_limit():
    syms = [f"v{i}" for i in range(LOCALITY_VAR_LIMIT + 1)] * 2
    p = pat(*syms)
    assert scope_coincidence_degree(p) > 1  # no shortcut applies
    with pytest.raises(BudgetExceeded):
        locality(p)


def test_class_invariants_random():
    rng = random.Random(13)
    for cls in CLASS_NAMES:
        for _ in range(40):
            p = random_pattern(cls, rng)
            info = classify(p)
            if info.is_unary:
                assert info.is_one_rep_var and info.is_noncross
            if p.var_names:
                assert info.is_noncross == (info.scd == 1)
                assert info.locality >= 1
            if info.is_regular:
                assert info.scd <= 1
            if info.is_noncross:
                assert info.locality <= 1
            assert validate_marking_sequence(p, info.marking_witness,
                                             info.locality)
            if info.repeated_var is not None:
                assert info.x_block_count >= 1
