"""Brute-force ground truth for minimum-mismatch matching.

Enumerates image length profiles (one length per distinct variable such
that the substituted pattern has the word's length).  For a fixed
profile every occurrence's window in the word is determined, so in
``median`` mode each variable is solved exactly and independently: a
variable occurring once copies its window for zero mismatches, a
repeated variable takes the column-wise majority over its windows.
``pure`` mode instead enumerates every substitution over the alphabet
and is only for validating the shortcut at very small sizes.  Both modes
are guarded by an enumeration budget computed as the total number of
substitutions, sum over profiles of sigma**(sum of image lengths).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    BudgetExceeded,
    Distance,
    INFINITE,
    Pattern,
    Substitution,
    Var,
    Word,
    apply_substitution,
    hamming_distance,
)

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class OracleResult:
    distance: Distance
    witness: Substitution | None


def _length_profiles(counts: list[int], residue: int):
    """All non-negative (l_1..l_p) with sum(c_i * l_i) == residue."""
    if not counts:
        if residue == 0:
            yield ()
        return
    c = counts[0]
    rest = counts[1:]
    if not rest:
        if residue % c == 0:
            yield (residue // c,)
        return
    for l0 in range(residue // c + 1):
        for tail in _length_profiles(rest, residue - c * l0):
            yield (l0,) + tail


def _check_budget(counts: list[int], residue: int, sigma: int, budget: int) -> None:
    total = 0
    for profile in _length_profiles(counts, residue):
        size = 1
        for l in profile:
            size *= sigma ** l
        total += size
        if total > budget:
            raise BudgetExceeded(
                f"oracle enumeration size exceeds budget of {budget}")


def brute_force_min_mismatch(word: Word, pattern: Pattern, *,
                             budget: int = DEFAULT_BUDGET,
                             mode: str = "median",
                             sigma: int | None = None) -> OracleResult:
    if mode not in ("median", "pure"):
        raise ValueError(f"unknown oracle mode {mode!r}")
    n = len(word)
    names = list(pattern.var_names)
    counts_map = pattern.var_counts
    counts = [counts_map[x] for x in names]
    residue = n - pattern.terminal_count
    if sigma is None:
        sigma = max(max(word, default=1),
                    max((s for s in pattern.symbols if isinstance(s, int)), default=1))
    if residue < 0:
        return OracleResult(INFINITE, None)
    _check_budget(counts, residue, sigma, budget)
    best: Distance = INFINITE
    best_witness: Substitution | None = None
    for profile in _length_profiles(counts, residue):
        lengths = dict(zip(names, profile))
        if mode == "pure":
            d, witness = _solve_profile_pure(word, pattern, names, lengths, sigma)
        else:
            d, witness = _solve_profile_median(word, pattern, lengths)
        if d < best:
            best, best_witness = d, witness
    return OracleResult(best, best_witness)


def _windows(word: Word, pattern: Pattern, lengths: dict[str, int]):
    """Fixed terminal mismatches and the window of every variable occurrence."""
    pos = 0
    fixed = 0
    windows: dict[str, list[Word]] = {}
    for s in pattern.symbols:
        if isinstance(s, Var):
            l = lengths[s.name]
            windows.setdefault(s.name, []).append(word[pos:pos + l])
            pos += l
        else:
            if word[pos] != s:
                fixed += 1
            pos += 1
    return fixed, windows


def _solve_profile_median(word: Word, pattern: Pattern, lengths: dict[str, int]):
    from .unary import median_string

    fixed, windows = _windows(word, pattern, lengths)
    total = fixed
    witness: Substitution = {}
    for name, wins in windows.items():
        if len(wins) == 1:
            witness[name] = wins[0]
        else:
            med = median_string(wins)
            witness[name] = med.median
            total += med.total_distance
    return total, witness


def _solve_profile_pure(word: Word, pattern: Pattern, names: list[str],
                        lengths: dict[str, int], sigma: int):
    alphabet = range(1, sigma + 1)
    best = INFINITE
    best_witness: Substitution | None = None
    image_choices = [
        [tuple(img) for img in product(alphabet, repeat=lengths[x])]
        for x in names
    ]
    for images in product(*image_choices):
        subst = dict(zip(names, images))
        d = hamming_distance(apply_substitution(pattern, subst), word)
        if d < best:
            best, best_witness = d, subst
    return best, best_witness
