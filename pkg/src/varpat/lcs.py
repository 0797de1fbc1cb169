"""Longest-common-suffix index over a word/block pair.

Built once per instance: the word and the block string are reversed,
joined with a sentinel letter 0, and equipped with a suffix array, an
LCP array and a sparse-table range-minimum structure.  A single query
``lcs(i, j)`` returns the length of the longest common suffix of
``word[1:i]`` and ``block[1:j]`` (1-based prefix lengths) in O(1).

On top of the index, ``bounded_mismatch`` runs the jump walk that
reports min(delta + 1, hamming distance) of two equal-length spans using
at most delta + 1 queries, and ``sliding_mismatch_array`` evaluates a
block against every window of the word the same way.
"""

from __future__ import annotations

import numpy as np

from .core import PatternLongerThanWord, SpanLengthMismatch, Word


def suffix_array(seq: np.ndarray) -> np.ndarray:
    """Suffix array by prefix doubling with lexsort ranks."""
    n = len(seq)
    if n == 0:
        return np.empty(0, dtype=np.intp)
    rank = np.unique(seq, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:n - k] = rank[k:]
        order = np.lexsort((second, rank))
        pair = np.empty((n, 2), dtype=np.int64)
        pair[:, 0] = rank[order]
        pair[:, 1] = second[order]
        new_rank = np.empty(n, dtype=np.int64)
        changed = np.ones(n, dtype=bool)
        changed[1:] = np.any(pair[1:] != pair[:-1], axis=1)
        new_rank[order] = np.cumsum(changed) - 1
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order.astype(np.intp)
        k *= 2


def lcp_array(seq: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """lcp[i] = longest common prefix of suffixes sa[i] and sa[i+1]."""
    n = len(seq)
    rank = np.empty(n, dtype=np.intp)
    rank[sa] = np.arange(n)
    lcp = np.zeros(max(n - 1, 0), dtype=np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == n - 1:
            h = 0
            continue
        j = sa[r + 1]
        while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class _SparseMin:
    def __init__(self, values: np.ndarray):
        n = len(values)
        levels = max(1, n.bit_length())
        table = [values.astype(np.int64)]
        span = 1
        while 2 * span <= n:
            prev = table[-1]
            table.append(np.minimum(prev[:n - 2 * span + 1], prev[span:n - span + 1]))
            span *= 2
        self.table = table

    def query(self, lo: int, hi: int) -> int:
        """min(values[lo:hi]), hi exclusive, lo < hi."""
        level = (hi - lo).bit_length() - 1
        row = self.table[level]
        return int(min(row[lo], row[hi - (1 << level)]))


class LcsIndex:
    """Longest common suffix of word/block prefixes in O(1) per query.

    ``query_count`` increments on every lcs() call; totals are exact only
    in single-threaded use.
    """

    def __init__(self, word: Word, block: Word):
        self.word = word
        self.block = block
        self.n = len(word)
        self.m = len(block)
        self.query_count = 0
        # Reverse both so common suffixes of prefixes become common
        # prefixes of suffixes; letter 0 is the cross-boundary sentinel.
        seq = np.concatenate([
            np.asarray(word[::-1], dtype=np.int64) if word else np.empty(0, dtype=np.int64),
            np.asarray([0], dtype=np.int64),
            np.asarray(block[::-1], dtype=np.int64) if block else np.empty(0, dtype=np.int64),
        ])
        self._len = len(seq)
        sa = suffix_array(seq)
        self._rank = np.empty(self._len, dtype=np.intp)
        self._rank[sa] = np.arange(self._len)
        lcp = lcp_array(seq, sa)
        self._rmq = _SparseMin(lcp) if len(lcp) else None

    def _suffix_pos_word(self, i: int) -> int:
        # word[1:i] reversed starts at index n - i of the reversed word.
        return self.n - i

    def _suffix_pos_block(self, j: int) -> int:
        # block[1:j] reversed starts at n + 1 + (m - j) in the joined text.
        return self.n + 1 + (self.m - j)

    def lcs(self, i: int, j: int) -> int:
        """Longest common suffix of word[1:i] and block[1:j]; 0 <= i <= n,
        0 <= j <= m (prefix lengths, 1-based index convention)."""
        self.query_count += 1
        if i <= 0 or j <= 0:
            return 0
        a = self._suffix_pos_word(i)
        b = self._suffix_pos_block(j)
        ra, rb = int(self._rank[a]), int(self._rank[b])
        if ra > rb:
            ra, rb = rb, ra
        out = self._rmq.query(ra, rb)
        return min(out, i, j)


def bounded_mismatch(index: LcsIndex, word_span: tuple[int, int],
                     block_span: tuple[int, int], delta: int) -> int:
    """min(delta + 1, hamming distance) of two equal-length spans.

    Spans are 1-based inclusive (a, b) into the word and (c, d) into the
    block of the index.  Walks right to left, jumping over the longest
    common suffix before each counted mismatch, so it issues at most
    delta + 1 lcs queries.
    """
    a, b = word_span
    c, d = block_span
    if b - a != d - c:
        raise SpanLengthMismatch(f"span lengths differ: {word_span} vs {block_span}")
    wa, ub = b, d
    count = 0
    while wa >= a:
        h = index.lcs(wa, ub)
        if h >= wa - a + 1:
            return count
        count += 1
        if count > delta:
            return delta + 1
        wa -= h + 1
        ub -= h + 1
    return count


def sliding_window_mismatches(index: LcsIndex, block_span: tuple[int, int],
                              delta: int) -> list[int]:
    """min(delta + 1, hamming distance) of the block span against every
    window of the index's word; entry t is the window ending at position
    span_length + t (1-based)."""
    c, d = block_span
    m = d - c + 1
    n = index.n
    if m > n:
        raise PatternLongerThanWord(f"block length {m} exceeds word length {n}")
    return [
        bounded_mismatch(index, (i - m + 1, i), block_span, delta)
        for i in range(m, n + 1)
    ]


def sliding_mismatch_array(word: Word, block: Word, delta: int) -> list[int]:
    """Capped mismatch counts of the block against all word windows.

    Builds a throwaway index; entry t corresponds to the window of the
    word ending at position len(block) + t, 1-based.  Issues at most
    delta + 1 queries per window.
    """
    index = LcsIndex(word, block)
    return sliding_window_mismatches(index, (1, len(block)), delta)
