"""Shared test utilities: witness checks and tiny brute-force solvers."""

from __future__ import annotations

from itertools import product

from varpat.core import (
    Pattern,
    Var,
    Word,
    apply_substitution,
    hamming_distance,
    is_finite,
)


def assert_valid_witness(pattern: Pattern, word: Word, witness, distance) -> None:
    """A finite reported distance with a witness must re-verify exactly."""
    assert is_finite(distance)
    assert witness is not None
    assert set(witness) == set(pattern.var_names)
    assert hamming_distance(apply_substitution(pattern, witness), word) == distance


def naive_min_mismatch(word: Word, pattern: Pattern, sigma: int,
                       min_image: int = 0):
    """Pure enumeration over all substitutions, for very small inputs.

    Independent of the package's oracle module: length profiles and
    letter choices are both enumerated directly.
    """
    names = list(pattern.var_names)
    counts = pattern.var_counts
    residue = len(word) - pattern.terminal_count
    best = None
    if residue < 0:
        return None
    for profile in _profiles([counts[x] for x in names], residue, min_image):
        ranges = [product(range(1, sigma + 1), repeat=l) for l in profile]
        for images in product(*ranges):
            sub = dict(zip(names, images))
            d = hamming_distance(apply_substitution(pattern, sub), word)
            if best is None or d < best:
                best = d
    return best


def _profiles(counts: list[int], residue: int, min_image: int):
    if not counts:
        if residue == 0:
            yield ()
        return
    c, rest = counts[0], counts[1:]
    for l0 in range(min_image, residue // c + 1):
        for tail in _profiles(rest, residue - c * l0, min_image):
            yield (l0,) + tail


def pat(*symbols) -> Pattern:
    """Shorthand: ints are terminals, strings are variable names."""
    out = []
    for s in symbols:
        out.append(Var(s) if isinstance(s, str) else s)
    return Pattern(tuple(out))
