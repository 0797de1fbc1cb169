"""Solvers for patterns in which a single variable may repeat.

The repeated variable x partitions the pattern into x-blocks (maximal
factors built from x and terminals that contain at least one x) and the
gaps around them, which hold the remaining pairwise-distinct variables
and terminal runs.  Once an image length for x and a start position for
every block are fixed, the gap costs are independent regular
sub-problems and the best x-image is a median over the aligned block
windows, so the exact solver enumerates (length, starts) tuples with
branch-and-bound pruning.

Two approximation routes trade the exponential block enumeration for a
candidate search over images: every factor of the word (factor
substitution, ratio 2) or medians of r sampled factors per length
(ratio min(2, 1 + (4*sigma-4)/(sqrt(e)*(sqrt(4r+1)-3))) for r >= 3 when
unioned with the factor candidates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .core import (
    Distance,
    INFINITE,
    NotOneRepVar,
    Pattern,
    Substitution,
    Symbol,
    Var,
    Word,
    hamming_distance,
    is_finite,
)
from .regular import RegularPattern, solve_regular
from .unary import median_string


@dataclass(frozen=True)
class OneRepDecomposition:
    """Blocks of the repeated variable and the regular gaps between them.

    ``gaps`` has one more entry than ``blocks`` and interleaves as
    gap[0] block[0] gap[1] ... block[k-1] gap[k]; entries are raw symbol
    tuples (gaps may be empty).  Every variable inside the gaps occurs
    exactly once in the whole pattern.
    """

    var: str
    blocks: tuple[tuple[Symbol, ...], ...]
    gaps: tuple[tuple[Symbol, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def occurrences(self) -> int:
        return sum(1 for b in self.blocks for s in b if isinstance(s, Var))


def decompose_one_rep(pattern: Pattern, repeated_var: str | None = None) -> OneRepDecomposition:
    """Split a pattern around its repeated variable.

    With no repeated variable the first variable plays the role; raises
    NotOneRepVar when two distinct variables repeat or none exists.
    """
    counts = pattern.var_counts
    repeated = sorted(name for name, c in counts.items() if c > 1)
    if len(repeated) > 1:
        raise NotOneRepVar(f"variables {repeated} all repeat")
    names = pattern.var_names
    if not names:
        raise NotOneRepVar("pattern has no variables")
    x = repeated_var or (repeated[0] if repeated else names[0])
    if x not in counts:
        raise NotOneRepVar(f"variable {x!r} does not occur")
    syms = pattern.symbols
    m = len(syms)
    blocks: list[tuple[Symbol, ...]] = []
    gaps: list[tuple[Symbol, ...]] = []
    gap_start = 0
    i = 0
    while i < m:
        s = syms[i]
        if isinstance(s, Var) and s.name != x:
            i += 1
            continue
        j = i
        has_x = False
        while j < m and (not isinstance(syms[j], Var) or syms[j].name == x):
            has_x = has_x or isinstance(syms[j], Var)
            j += 1
        if has_x:
            gaps.append(syms[gap_start:i])
            blocks.append(syms[i:j])
            gap_start = j
        i = j
    gaps.append(syms[gap_start:])
    return OneRepDecomposition(x, tuple(blocks), tuple(gaps))


# Above this many compared cells the single-block gap scan switches from
# per-placement slices to a chunked vectorized sweep.
_SCAN_VECTOR_CELLS = 1 << 16


class _GapEval:
    """Best mismatch count of one gap over word spans, memoized.

    Spans are 1-based inclusive (s, e) with s = e + 1 meaning empty.
    Single-block gaps cache per absolute placement, so the overlapping
    spans probed by the enumeration share almost all work.
    """

    def __init__(self, symbols: tuple[Symbol, ...], word: Word, warr: np.ndarray):
        self.symbols = symbols
        self.word = word
        self.warr = warr
        first = next((t for t, s in enumerate(symbols) if isinstance(s, Var)), None)
        if first is None:
            self.rp = None
            self.core_symbols: tuple[Symbol, ...] = ()
            pfx: tuple[Symbol, ...] = symbols
            sfx: tuple[Symbol, ...] = ()
            self.min_len = len(symbols)
            self.exact_len = True
        else:
            last = max(t for t, s in enumerate(symbols) if isinstance(s, Var))
            pfx = symbols[:first]
            sfx = symbols[last + 1:]
            self.core_symbols = symbols[first:last + 1]
            self.rp = RegularPattern.from_symbols(self.core_symbols)
            self.min_len = len(pfx) + len(sfx) + self.rp.terminal_count
            self.exact_len = False
        self.plen = len(pfx)
        self.slen = len(sfx)
        self.prefix = np.asarray(pfx, dtype=np.int64) if pfx else None
        self.suffix = np.asarray(sfx, dtype=np.int64) if sfx else None
        self.block_arr: np.ndarray | None = None
        if self.rp is not None and len(self.rp.blocks) == 1:
            self.block_arr = np.asarray(self.rp.blocks[0], dtype=np.int64)
        self.place_memo: dict[int, int] = {}
        self.memo: dict[tuple[int, int], Distance] = {}

    def eval(self, s: int, e: int) -> Distance:
        key = (s, e)
        got = self.memo.get(key)
        if got is None:
            got = self._compute(s, e)
            self.memo[key] = got
        return got

    def _affix_cost(self, s: int, e: int) -> int:
        cost = 0
        if self.prefix is not None:
            cost += int(np.count_nonzero(self.warr[s - 1:s - 1 + self.plen] != self.prefix))
        if self.suffix is not None:
            cost += int(np.count_nonzero(self.warr[e - self.slen:e] != self.suffix))
        return cost

    def _placement(self, a: int) -> int:
        cost = self.place_memo.get(a)
        if cost is None:
            assert self.block_arr is not None
            bl = len(self.block_arr)
            cost = int(np.count_nonzero(self.warr[a - 1:a - 1 + bl] != self.block_arr))
            self.place_memo[a] = cost
        return cost

    def _compute(self, s: int, e: int) -> Distance:
        length = e - s + 1
        if length < self.min_len or (self.exact_len and length != self.min_len):
            return INFINITE
        cost = self._affix_cost(s, e)
        if self.rp is None or not self.rp.blocks:
            return cost
        cs, ce = s + self.plen, e - self.slen
        if self.block_arr is not None:
            bl = len(self.block_arr)
            width = ce - bl + 2 - cs
            if width * bl > _SCAN_VECTOR_CELLS:
                return cost + self._vector_scan(cs, ce, bl)
            best = min(self._placement(a) for a in range(cs, ce - bl + 2))
            return cost + best
        sub = solve_regular(self.word[cs - 1:ce], self.core_symbols)
        if not is_finite(sub.distance):
            return INFINITE
        return cost + sub.distance

    def _vector_scan(self, cs: int, ce: int, bl: int) -> int:
        seg = self.warr[cs - 1:ce]
        rows = len(seg) - bl + 1
        chunk = max(1, _SCAN_VECTOR_CELLS // bl)
        best = bl + 1
        for lo in range(0, rows, chunk):
            hi = min(rows, lo + chunk)
            wins = np.lib.stride_tricks.sliding_window_view(seg[lo:hi + bl - 1], bl)
            costs = (wins != self.block_arr).sum(axis=1)
            best = min(best, int(costs.min()))
            if best == 0:
                break
        return best

    def witness(self, s: int, e: int) -> Substitution:
        """Images for the gap variables on a span known to be feasible."""
        if self.rp is None:
            return {}
        cs, ce = s + self.plen, e - self.slen
        if not self.rp.blocks:
            return self.rp.expand_witness([self.word[cs - 1:ce]])
        if self.block_arr is not None:
            bl = len(self.block_arr)
            best_a = min(range(cs, ce - bl + 2), key=self._placement)
            return self.rp.expand_witness(
                [self.word[cs - 1:best_a - 1], self.word[best_a + bl - 1:ce]])
        sub = solve_regular(self.word[cs - 1:ce], self.core_symbols, want_witness=True)
        return sub.witness or {}


class _BlockLayout:
    """Terminal offsets and variable-window offsets of one x-block for a
    fixed image length."""

    __slots__ = ("length", "term_off", "letters", "windows")

    def __init__(self, symbols: tuple[Symbol, ...], image_len: int):
        term_off: list[int] = []
        letters: list[int] = []
        windows: list[int] = []
        pos = 0
        for s in symbols:
            if isinstance(s, Var):
                windows.append(pos)
                pos += image_len
            else:
                term_off.append(pos)
                letters.append(s)
                pos += 1
        self.length = pos
        self.term_off = np.asarray(term_off, dtype=np.int64) if term_off else None
        self.letters = np.asarray(letters, dtype=np.int64) if term_off else None
        self.windows = tuple(windows)

    def fixed_cost(self, warr: np.ndarray, h: int, memo: dict) -> int:
        if self.term_off is None:
            return 0
        key = (id(self), h)
        cost = memo.get(key)
        if cost is None:
            cost = int(np.count_nonzero(warr[h - 1 + self.term_off] != self.letters))
            memo[key] = cost
        return cost


@dataclass(frozen=True)
class OneRepResult:
    distance: Distance
    witness: Substitution | None
    image: Word | None
    leaves: int


def min_mismatch_1repvar(word: Word, pattern: Pattern) -> OneRepResult:
    """Exact minimum-mismatch distance for a one-repeated-variable pattern.

    Enumerates the image length of the repeated variable and the start
    position of every block (depth first, pruned by the accumulated
    cost); each visited tuple pays its fixed terminal and gap costs plus
    one median over all aligned variable windows.
    """
    n = len(word)
    if pattern.is_terminal_only():
        if len(pattern) != n:
            return OneRepResult(INFINITE, None, None, 0)
        return OneRepResult(hamming_distance(pattern.terminal_word(), word), {}, None, 0)
    decomp = decompose_one_rep(pattern)
    k = decomp.block_count
    occ = decomp.occurrences
    warr = np.asarray(word, dtype=np.int64) if n else np.empty(0, dtype=np.int64)
    gap_eval = [_GapEval(g, word, warr) for g in decomp.gaps]
    gmin = [g.min_len for g in gap_eval]
    gexact = [g.exact_len for g in gap_eval]
    bterms = [sum(1 for s in b if not isinstance(s, Var)) for b in decomp.blocks]
    base_min = sum(bterms) + sum(gmin)
    best: Distance = INFINITE
    best_state: tuple[int, tuple[int, ...]] | None = None
    leaves = 0
    if base_min > n:
        return OneRepResult(INFINITE, None, None, 0)

    for ell in range((n - base_min) // occ + 1):
        layouts = [_BlockLayout(b, ell) for b in decomp.blocks]
        elen = [lay.length for lay in layouts]
        need = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            need[i] = elen[i] + gmin[i + 1] + need[i + 1]
        fixed_memo: dict = {}
        hs = [0] * k

        def leaf_windows() -> list[Word]:
            out: list[Word] = []
            for i in range(k):
                for off in layouts[i].windows:
                    ws = hs[i] + off
                    out.append(word[ws - 1:ws - 1 + ell])
            return out

        def dfs(i: int, prev_end: int, acc: int) -> None:
            nonlocal best, best_state, leaves
            if acc >= best:
                return
            if i == k:
                tail = gap_eval[k].eval(prev_end + 1, n)
                if not is_finite(tail):
                    return
                total = acc + tail
                if total >= best:
                    return
                if ell:
                    total += median_string(leaf_windows()).total_distance
                leaves += 1
                if total < best:
                    best = total
                    best_state = (ell, tuple(hs))
                return
            lo = prev_end + 1 + gmin[i]
            hi = n + 1 - need[i]
            if gexact[i]:
                hi = min(hi, lo)
            for h in range(lo, hi + 1):
                cost = gap_eval[i].eval(prev_end + 1, h - 1)
                if not is_finite(cost):
                    continue
                acc2 = acc + cost + layouts[i].fixed_cost(warr, h, fixed_memo)
                if acc2 < best:
                    hs[i] = h
                    dfs(i + 1, h + elen[i] - 1, acc2)

        dfs(0, 0, 0)

    if best_state is None:
        return OneRepResult(INFINITE, None, None, leaves)
    ell, hs_won = best_state
    layouts = [_BlockLayout(b, ell) for b in decomp.blocks]
    windows = [word[hs_won[i] + off - 1:hs_won[i] + off - 1 + ell]
               for i in range(k) for off in layouts[i].windows]
    image: Word = median_string(windows).median if ell else ()
    subst: Substitution = {decomp.var: image}
    prev_end = 0
    for i in range(k):
        subst.update(gap_eval[i].witness(prev_end + 1, hs_won[i] - 1))
        prev_end = hs_won[i] + layouts[i].length - 1
    subst.update(gap_eval[k].witness(prev_end + 1, n))
    return OneRepResult(best, subst, image, leaves)


def _substituted(symbols: tuple[Symbol, ...], x: str, image: Word) -> tuple[Symbol, ...]:
    out: list[Symbol] = []
    for s in symbols:
        if isinstance(s, Var) and s.name == x:
            out.extend(image)
        else:
            out.append(s)
    return tuple(out)


class _CandidateSearch:
    """Best distance over candidate images for the repeated variable."""

    def __init__(self, word: Word, pattern: Pattern, x: str):
        self.word = word
        self.symbols = pattern.symbols
        self.x = x
        self.occ = pattern.var_counts[x]
        self.min_rest = pattern.terminal_count
        self.seen: set[Word] = set()
        self.best: Distance = INFINITE
        self.best_image: Word | None = None
        self.tried = 0

    def feasible_length(self, image_len: int) -> bool:
        return self.min_rest + self.occ * image_len <= len(self.word)

    def try_image(self, image: Word) -> None:
        if image in self.seen:
            return
        self.seen.add(image)
        self.tried += 1
        d = solve_regular(self.word, _substituted(self.symbols, self.x, image)).distance
        if d < self.best:
            self.best = d
            self.best_image = image

    def add_all_factors(self) -> None:
        word, n = self.word, len(self.word)
        self.try_image(())
        for ell in range(1, n + 1):
            if not self.feasible_length(ell):
                break
            for start in range(n - ell + 1):
                self.try_image(word[start:start + ell])

    def witness(self) -> Substitution | None:
        if self.best_image is None or not is_finite(self.best):
            return None
        sub = solve_regular(self.word,
                            _substituted(self.symbols, self.x, self.best_image),
                            want_witness=True)
        out = dict(sub.witness or {})
        out[self.x] = self.best_image
        return out


def _search_target(pattern: Pattern) -> str:
    decomp_var = decompose_one_rep(pattern).var
    return decomp_var


def approx2_search(word: Word, pattern: Pattern) -> _CandidateSearch:
    """Factor-substitution search; exposes image and witness of the winner."""
    search = _CandidateSearch(word, pattern, _search_target(pattern))
    search.add_all_factors()
    return search


def approx2_1repvar(word: Word, pattern: Pattern) -> Distance:
    """Distance at most twice the optimum, by substituting every factor
    of the word (and the empty word) for the repeated variable and
    solving the resulting regular pattern."""
    if pattern.is_terminal_only():
        return solve_regular(word, pattern.symbols).distance
    return approx2_search(word, pattern).best


@dataclass(frozen=True)
class PtasConfig:
    """Sample count and alphabet size for the median-sampling scheme."""

    r: int
    sigma: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("sample count must be >= 1")
        if self.sigma < 1:
            raise ValueError("alphabet size must be >= 1")

    @property
    def ratio(self) -> float:
        return ptas_ratio(self.r, self.sigma)


def ptas_ratio(r: int, sigma: int) -> float:
    """Guaranteed approximation ratio of the r-sample median scheme when
    unioned with the factor candidates; 2 whenever the sampled branch
    gives no better bound (r < 3)."""
    root = math.sqrt(4 * r + 1) - 3
    if root <= 0:
        return 2.0
    return min(2.0, 1.0 + (4 * sigma - 4) / (math.sqrt(math.e) * root))


def ptas_search(word: Word, pattern: Pattern, cfg: PtasConfig,
                union_approx2: bool = True) -> _CandidateSearch:
    """Median-of-r-factors candidate search.

    For every image length up to n/r, every multiset of r factor start
    positions contributes the median of those factors as a candidate.
    With ``union_approx2`` the plain factor candidates join the pool,
    which keeps the result within twice the optimum for any r.
    """
    search = _CandidateSearch(word, pattern, _search_target(pattern))
    word_t, n = word, len(word)
    search.try_image(())
    for ell in range(1, n // cfg.r + 1):
        if not search.feasible_length(ell):
            break
        for starts in combinations_with_replacement(range(n - ell + 1), cfg.r):
            med = median_string([word_t[a:a + ell] for a in starts]).median
            search.try_image(med)
    if union_approx2:
        search.add_all_factors()
    return search


def ptas_1repvar(word: Word, pattern: Pattern, cfg: PtasConfig, *,
                 union_approx2: bool = True) -> Distance:
    """Approximation with ratio min(2, 1 + (4*sigma-4)/(sqrt(e)*(sqrt(4r+1)-3)))."""
    if pattern.is_terminal_only():
        return solve_regular(word, pattern.symbols).distance
    return ptas_search(word, pattern, cfg, union_approx2).best
