"""Matching for patterns in which no variable repeats.

A peeled regular pattern alternates variable slots and terminal blocks,
``v1 w1 v2 w2 ... w_{M-1} vM``.  Runs of adjacent variables are merged
into one slot (the extra variables take the empty image in witnesses),
so all stored blocks are non-empty.

Three routes compute mismatch distances:

* ``match_reg_exact``: greedy right-to-left exact matcher (distance 0).
* ``mismatch_reg_dp``: O(n*m) dynamic program, the reference baseline.
* ``mismatch_reg``: budgeted decision via the shortest-suffix table.
  ``suf[level][d]`` is the start of the shortest word suffix that the
  pattern tail from that level matches with at most d mismatches (0 if
  none).  Rows are computed top down with a queue scan whose mismatch
  walks cost O(n * delta) longest-common-suffix queries overall.
* ``min_mismatch_reg``: exact minimum by doubling the budget.

The non-overlap constraint between consecutive block placements admits
empty variable images by default; ``strict_gaps=True`` forces at least
one word position between blocks (boundary variables may still be
empty).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    Distance,
    INFINITE,
    NotRegular,
    Pattern,
    PeeledInstance,
    Substitution,
    Symbol,
    Var,
    Word,
    hamming_distance,
    is_finite,
    peel_affixes,
)
from .lcs import LcsIndex, bounded_mismatch, sliding_window_mismatches


@dataclass(frozen=True)
class RegularPattern:
    """Canonical var-slot / terminal-block alternation of a peeled
    regular pattern."""

    var_runs: tuple[tuple[str, ...], ...]
    blocks: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.var_runs) != len(self.blocks) + 1:
            raise ValueError("need exactly one more variable slot than blocks")
        if any(not b for b in self.blocks):
            raise ValueError("blocks must be non-empty")

    @property
    def slot_count(self) -> int:
        return len(self.var_runs)

    @property
    def terminal_count(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def from_symbols(cls, symbols: tuple[Symbol, ...]) -> "RegularPattern":
        """Build from a peeled core (starts and ends with a variable)."""
        if not symbols or not isinstance(symbols[0], Var) or not isinstance(symbols[-1], Var):
            raise ValueError("core must start and end with a variable")
        seen: set[str] = set()
        var_runs: list[tuple[str, ...]] = []
        blocks: list[Word] = []
        run: list[str] = []
        block: list[int] = []
        for s in symbols:
            if isinstance(s, Var):
                if s.name in seen:
                    raise NotRegular(f"variable {s.name!r} occurs more than once")
                seen.add(s.name)
                if block:
                    blocks.append(tuple(block))
                    block = []
                    var_runs.append(tuple(run))
                    run = []
                run.append(s.name)
            else:
                block.append(s)
        var_runs.append(tuple(run))
        return cls(tuple(var_runs), tuple(blocks))

    @classmethod
    def from_pattern(cls, pattern: Pattern) -> "RegularPattern":
        return cls.from_symbols(pattern.symbols)

    def expand_witness(self, slot_images: list[Word]) -> Substitution:
        """Slot images to a full substitution; merged extras take epsilon."""
        subst: Substitution = {}
        for run, image in zip(self.var_runs, slot_images):
            subst[run[0]] = image
            for name in run[1:]:
                subst[name] = ()
        return subst


def match_reg_exact(word: Word, rp: RegularPattern) -> Substitution | None:
    """Exact match by assigning each block its last occurrence, right to
    left; returns None iff no substitution maps the pattern to the word."""
    n = len(word)
    tail = n
    images: list[Word] = [()] * rp.slot_count
    for idx in range(len(rp.blocks) - 1, -1, -1):
        block = rp.blocks[idx]
        start = _last_occurrence(word, block, tail)
        if start is None:
            return None
        images[idx + 1] = word[start + len(block) - 1:tail]
        tail = start - 1
    images[0] = word[:tail]
    return rp.expand_witness(images)


def _last_occurrence(word: Word, block: Word, end: int) -> int | None:
    """Largest 1-based start s with word[s:s+len-1] == block and
    s + len - 1 <= end."""
    L = len(block)
    for s in range(end - L, -1, -1):
        if word[s:s + L] == block:
            return s + 1
    return None


def mismatch_reg_dp(word: Word, rp: RegularPattern, strict_gaps: bool = False) -> Distance:
    """O(n*m) suffix dynamic program.

    Processes the canonical pattern right to left; the state maps every
    word suffix length to the best mismatch count of the processed
    pattern tail against that suffix.  Terminals shift the state, merged
    variable slots take a running minimum (shifted once when an inner
    slot must be non-empty).
    """
    n = len(word)
    rev = np.asarray(word[::-1], dtype=np.int64) if n else np.empty(0, dtype=np.int64)
    state = np.full(n + 1, np.inf)
    state[0] = 0.0
    slots = rp.slot_count
    for k in range(slots - 1, -1, -1):
        inner = strict_gaps and 0 < k < slots - 1
        if inner:
            shifted = np.empty(n + 1)
            shifted[0] = np.inf
            shifted[1:] = state[:-1]
            state = np.minimum.accumulate(shifted)
        else:
            state = np.minimum.accumulate(state)
        if k > 0:
            for letter in reversed(rp.blocks[k - 1]):
                nxt = np.full(n + 1, np.inf)
                nxt[1:] = state[:-1] + (rev[:n] != letter)
                state = nxt
    out = state[n]
    return INFINITE if np.isinf(out) else int(out)


@dataclass(frozen=True)
class SufMatrix:
    """Shortest-suffix starts per (level, budget); level 1 is the whole
    pattern, rows above it exist only when the matrix was retained."""

    delta: int
    rows: dict[int, tuple[int, ...]]

    def row(self, level: int) -> tuple[int, ...]:
        return self.rows[level]


@dataclass(frozen=True)
class RegMatchResult:
    accepted: bool
    distance: int | None
    suf: SufMatrix
    queries: int


def _densify_last_row(window_dists: list[int], block_len: int, delta: int) -> list[int]:
    """Row for the final block: rightmost window start whose mismatch
    count is at most d, for every budget d."""
    exact = [0] * (delta + 1)
    for t, dist in enumerate(window_dists):
        if dist <= delta:
            exact[dist] = t + 1
    row = [0] * (delta + 1)
    best = 0
    for d in range(delta + 1):
        best = max(best, exact[d])
        row[d] = best
    return row


def _scan_row(index: LcsIndex, prev: list[int], span: tuple[int, int],
              delta: int, gap: int, trace: list | None, level: int) -> list[int]:
    """One queue scan deriving a level's row from the row below it.

    The queue holds the budgets d whose entry is still unset while the
    row below can start late enough (prev[d] > i + gap); it is an
    interval [new, old] because entries are set from the large end.
    """
    block_len = span[1] - span[0] + 1
    cur = [0] * (delta + 1)
    if prev[delta] == 0:
        return cur
    new = delta
    while new > 0 and prev[new - 1] == prev[delta]:
        new -= 1
    old = delta
    i = prev[delta] - 1 - gap
    if trace is not None:
        trace.append({"event": "init", "level": level, "i": i, "queue": [new, old]})
    while i >= block_len:
        qsize = old - new + 1
        if qsize > 0:
            t = bounded_mismatch(index, (i - block_len + 1, i), span, qsize - 1)
            if t < qsize:
                g = i - block_len + 1
                for d in range(new + t, old + 1):
                    cur[d] = g
                if trace is not None:
                    trace.append({"event": "pop", "level": level, "i": i, "t": t,
                                  "budgets": [new + t, old], "start": g})
                old = new + t - 1
        while new > 0 and prev[new - 1] == i + gap:
            new -= 1
            if trace is not None:
                trace.append({"event": "push", "level": level, "i": i, "budget": new})
        if old < new:
            if new == 0 or prev[new - 1] == 0:
                break
            i = prev[new - 1] - gap
            continue
        i -= 1
    return cur


def build_block_index(word: Word, blocks: tuple[Word, ...]) -> tuple[LcsIndex, list[tuple[int, int]]]:
    """One index over the word and all blocks joined; returns it with the
    1-based span of each block inside the joined string."""
    joined: list[int] = []
    spans: list[tuple[int, int]] = []
    for b in blocks:
        spans.append((len(joined) + 1, len(joined) + len(b)))
        joined.extend(b)
    return LcsIndex(word, tuple(joined)), spans


def mismatch_reg(word: Word, rp: RegularPattern, delta: int, *,
                 index: LcsIndex | None = None,
                 spans: list[tuple[int, int]] | None = None,
                 keep_matrix: bool = False,
                 strict_gaps: bool = False,
                 trace: list | None = None) -> RegMatchResult:
    """Decide whether the pattern matches within ``delta`` mismatches.

    Budgets above the word length are clamped.  The distance field holds
    the exact minimum when accepted.  The shortest-suffix matrix keeps
    only its final row unless ``keep_matrix`` is set.
    """
    n = len(word)
    delta = max(0, min(delta, n))
    gap = 1 if strict_gaps else 0
    rows: dict[int, tuple[int, ...]] = {}
    queries_before = index.query_count if index is not None else 0
    if rp.slot_count == 1:
        suf = SufMatrix(delta, {})
        return RegMatchResult(True, 0, suf, 0)
    if index is None:
        index, spans = build_block_index(word, rp.blocks)
        queries_before = index.query_count
    assert spans is not None
    levels = len(rp.blocks)
    last = rp.blocks[-1]
    if len(last) > n:
        row = [0] * (delta + 1)
    else:
        dists = sliding_window_mismatches(index, spans[-1], delta)
        row = _densify_last_row(dists, len(last), delta)
    if keep_matrix:
        rows[levels] = tuple(row)
    for level in range(levels - 1, 0, -1):
        row = _scan_row(index, row, spans[level - 1], delta, gap, trace, level)
        if keep_matrix:
            rows[level] = tuple(row)
    rows.setdefault(1, tuple(row))
    distance = next((d for d in range(delta + 1) if row[d]), None)
    return RegMatchResult(
        accepted=distance is not None,
        distance=distance,
        suf=SufMatrix(delta, rows),
        queries=index.query_count - queries_before,
    )


@dataclass(frozen=True)
class MinRegResult:
    distance: Distance
    queries: int
    probes: tuple[int, ...]
    witness: Substitution | None = None


def min_mismatch_reg(word: Word, rp: RegularPattern, *,
                     strict_gaps: bool = False,
                     want_witness: bool = False) -> MinRegResult:
    """Exact minimum mismatch count by doubling the decision budget.

    Probes budgets 0, 1, 2, 4, ... up to the word length; a rejection at
    budget n means no substitution yields the word's length, reported as
    INFINITE.
    """
    n = len(word)
    if rp.slot_count == 1:
        witness = rp.expand_witness([word]) if want_witness else None
        return MinRegResult(0, 0, (0,), witness)
    index, spans = build_block_index(word, rp.blocks)
    probes: list[int] = []
    budget = 0
    while True:
        probes.append(budget)
        res = mismatch_reg(word, rp, budget, index=index, spans=spans,
                           keep_matrix=want_witness, strict_gaps=strict_gaps)
        if res.accepted:
            assert res.distance is not None
            witness = None
            if want_witness:
                witness = _witness_from_matrix(word, rp, res.suf, res.distance)
            return MinRegResult(res.distance, index.query_count, tuple(probes), witness)
        if budget >= n:
            return MinRegResult(INFINITE, index.query_count, tuple(probes), None)
        budget = min(max(1, 2 * budget), n)


def _witness_from_matrix(word: Word, rp: RegularPattern, suf: SufMatrix,
                         distance: int) -> Substitution:
    """Walk the retained matrix from the full pattern down, fixing each
    block at its row's start and charging its true mismatches."""
    images: list[Word] = []
    budget = distance
    start = suf.row(1)[budget]
    images.append(word[:start - 1])
    for level in range(1, len(rp.blocks) + 1):
        block = rp.blocks[level - 1]
        end = start + len(block) - 1
        budget -= hamming_distance(block, word[start - 1:end])
        if level < len(rp.blocks):
            nxt = suf.row(level + 1)[budget]
            images.append(word[end:nxt - 1])
            start = nxt
        else:
            images.append(word[end:])
    return rp.expand_witness(images)


@dataclass(frozen=True)
class RegularSolve:
    distance: Distance
    witness: Substitution | None
    queries: int


DP_CELL_LIMIT = 1 << 22


def solve_regular(word: Word, symbols: tuple[Symbol, ...] | Pattern, *,
                  want_witness: bool = False, strict_gaps: bool = False,
                  dp_cell_limit: int = DP_CELL_LIMIT) -> RegularSolve:
    """Minimum mismatches for any regular symbol run against a word.

    Accepts terminal affixes and empty runs, peels, then picks the route
    by size: the dense dynamic program while the table stays small, the
    shortest-suffix doubling driver beyond that (and always when a
    witness is requested, since the dense program keeps no trace).
    """
    if isinstance(symbols, Pattern):
        symbols = symbols.symbols
    symbols = tuple(symbols)
    n = len(word)
    if not symbols:
        if n == 0:
            return RegularSolve(0, {} if want_witness else None, 0)
        return RegularSolve(INFINITE, None, 0)
    peeled = peel_affixes(Pattern(symbols), word)
    if not peeled.feasible:
        return RegularSolve(INFINITE, None, 0)
    if not peeled.core_pattern:
        return RegularSolve(peeled.affix_mismatches,
                            {} if want_witness else None, 0)
    rp = RegularPattern.from_symbols(peeled.core_pattern)
    core_word = peeled.core_word
    cells = (len(core_word) + 1) * (rp.terminal_count + rp.slot_count)
    if not want_witness and cells <= dp_cell_limit:
        d = mismatch_reg_dp(core_word, rp, strict_gaps=strict_gaps)
        if not is_finite(d):
            return RegularSolve(INFINITE, None, 0)
        return RegularSolve(peeled.affix_mismatches + d, None, 0)
    res = min_mismatch_reg(core_word, rp, strict_gaps=strict_gaps,
                           want_witness=want_witness)
    if not is_finite(res.distance):
        return RegularSolve(INFINITE, None, res.queries)
    return RegularSolve(peeled.affix_mismatches + res.distance,
                        res.witness, res.queries)
