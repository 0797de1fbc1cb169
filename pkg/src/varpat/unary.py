"""Matching for patterns built over a single variable.

The optimal image of a variable whose occurrences are pinned to fixed
windows of the word is the column-wise majority letter over those
windows (ties broken toward the smallest letter id), and the cost is the
number of non-majority cells.  ``min_mismatch_1var`` derives the unique
feasible image length from the word length and solves the whole pattern
in one pass; ``optimal_unary_assignment`` does the same for several
pattern fragments sharing one variable, each pinned to its own target
factor, as needed by the more general matchers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Distance,
    INFINITE,
    LengthInfeasible,
    Pattern,
    Var,
    Word,
)


@dataclass(frozen=True)
class MedianResult:
    median: Word
    total_distance: int


def median_string(words: list[Word] | tuple[Word, ...], sigma: int | None = None) -> MedianResult:
    """Column-wise majority string of equal-length words.

    Per column, the counter array over the alphabet is touched only at
    letters that occur and reset the same way, so the cost is
    O(sigma + total input size) overall.
    """
    if not words:
        raise ValueError("median of an empty set of words")
    m = len(words[0])
    if any(len(u) != m for u in words):
        raise LengthInfeasible("median inputs must share one length")
    if sigma is None:
        sigma = max((a for u in words for a in u), default=1)
    counts = [0] * (sigma + 1)
    median: list[int] = []
    matched = 0
    for j in range(m):
        seen: list[int] = []
        for u in words:
            a = u[j]
            if counts[a] == 0:
                seen.append(a)
            counts[a] += 1
        best = 0
        best_count = 0
        for a in sorted(seen):
            if counts[a] > best_count:
                best, best_count = a, counts[a]
        median.append(best)
        matched += best_count
        for a in seen:
            counts[a] = 0
    return MedianResult(tuple(median), m * len(words) - matched)


@dataclass(frozen=True)
class UnaryMatch:
    distance: Distance
    image: Word | None


def _unary_layout(pattern: Pattern, name: str, image_len: int):
    """Per-symbol walk: (offset, letter) for terminals, offset for windows."""
    terminals: list[tuple[int, int]] = []
    windows: list[int] = []
    pos = 0
    for s in pattern.symbols:
        if isinstance(s, Var):
            if s.name != name:
                raise ValueError(f"pattern uses variable {s.name!r}, expected {name!r}")
            windows.append(pos)
            pos += image_len
        else:
            terminals.append((pos, s))
            pos += 1
    return terminals, windows, pos


def optimal_unary_assignment(blocks: list[Pattern], targets: list[Word],
                             image_len: int, sigma: int | None = None) -> UnaryMatch:
    """Best common image of the one shared variable across aligned fragments.

    Every block is aligned against its target of exactly the expanded
    length; terminal cells contribute fixed mismatches and the variable's
    windows are pooled into one median.
    """
    if len(blocks) != len(targets):
        raise LengthInfeasible("one target per block required")
    name = None
    for b in blocks:
        names = b.var_names
        if len(names) > 1:
            raise ValueError("blocks must use at most one variable")
        if names:
            if name is None:
                name = names[0]
            elif name != names[0]:
                raise ValueError("blocks must share one variable")
    fixed = 0
    pool: list[Word] = []
    for b, t in zip(blocks, targets):
        terminals, windows, total = _unary_layout(b, name, image_len) if name else (
            [(i, s) for i, s in enumerate(b.symbols)], [], len(b.symbols))
        if total != len(t):
            raise LengthInfeasible(
                f"target length {len(t)} differs from expanded length {total}")
        for pos, letter in terminals:
            if t[pos] != letter:
                fixed += 1
        for pos in windows:
            pool.append(t[pos:pos + image_len])
    if not pool or image_len == 0:
        return UnaryMatch(fixed, () if name is not None else None)
    med = median_string(pool, sigma=sigma)
    return UnaryMatch(fixed + med.total_distance, med.median)


def min_mismatch_1var(word: Word, pattern: Pattern, sigma: int | None = None) -> UnaryMatch:
    """Minimum mismatches of a single-variable pattern against a word.

    The image length is forced by the lengths: (|word| - #terminals) /
    #occurrences.  A non-integral or negative value means no substitution
    fits, reported as INFINITE.
    """
    names = pattern.var_names
    if len(names) != 1:
        raise ValueError("pattern must use exactly one distinct variable")
    occ = pattern.var_counts[names[0]]
    residue = len(word) - pattern.terminal_count
    if residue < 0 or residue % occ != 0:
        return UnaryMatch(INFINITE, None)
    return optimal_unary_assignment([pattern], [word], residue // occ, sigma=sigma)
