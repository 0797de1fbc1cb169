"""Matching for patterns whose variable scopes are pairwise disjoint.

Such a pattern splits into consecutive single-variable segments, one per
variable in first-occurrence order; terminal runs between two variable
zones attach to the preceding segment (leading terminals to the first).
A prefix dynamic program then assigns every segment a word factor: entry
(j, l) is the best mismatch count of the first l segments against the
word prefix of length j, each inner step scanning all split points with
the single-variable solver.
"""

from __future__ import annotations

from .core import Distance, INFINITE, NotNonCross, Pattern, Var, Word, is_finite
from .classify import scope_coincidence_degree
from .unary import min_mismatch_1var


def decompose_noncross(pattern: Pattern) -> list[Pattern]:
    """Split into single-variable segments covering the pattern."""
    if scope_coincidence_degree(pattern) > 1:
        raise NotNonCross("variable scopes overlap")
    syms = pattern.symbols
    last: dict[str, int] = {}
    first: dict[str, int] = {}
    order: list[str] = []
    for i, s in enumerate(syms):
        if isinstance(s, Var):
            if s.name not in first:
                first[s.name] = i
                order.append(s.name)
            last[s.name] = i
    if not order:
        raise NotNonCross("pattern has no variables")
    bounds: list[int] = []
    for idx in range(len(order) - 1):
        bounds.append(first[order[idx + 1]])
    bounds.append(len(syms))
    segments: list[Pattern] = []
    start = 0
    for end in bounds:
        segments.append(Pattern(syms[start:end]))
        start = end
    return segments


def min_mismatch_noncross(word: Word, pattern: Pattern,
                          segments: list[Pattern] | None = None) -> Distance:
    """Minimum mismatches of a non-crossing pattern against a word."""
    if segments is None:
        segments = decompose_noncross(pattern)
    n = len(word)
    prev: list[Distance] = [
        min_mismatch_1var(word[:j], segments[0]).distance for j in range(n + 1)
    ]
    for seg in segments[1:]:
        cur: list[Distance] = [INFINITE] * (n + 1)
        for j in range(n + 1):
            best: Distance = INFINITE
            for j0 in range(j + 1):
                left = prev[j0]
                if not is_finite(left) or left >= best:
                    continue
                right = min_mismatch_1var(word[j0:j], seg).distance
                if is_finite(right) and left + right < best:
                    best = left + right
            cur[j] = best
        prev = cur
    return prev[n]
