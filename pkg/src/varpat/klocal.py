"""Matching for k-local patterns via marking sequences.

A pattern is k-local when its variables can be ordered so that, marking
them one by one, the marked occurrences always form at most k blocks of
the variable skeleton.  The matcher follows that order.  After h steps
the marked material spans at most k maximal factors of the pattern
(marked variables plus absorbed terminal runs); the alignment table for
step h maps every placement of those factors onto word spans to the
minimal mismatch count achievable by the marked variables.

Marking the next variable y merges the old factors it bridges.  Once
y's image length is fixed, the glue runs (y occurrences and terminals)
between and around absorbed factors have known expanded lengths, so the
merged spans derive exactly from the old anchors; factors consisting of
y and terminals alone have no anchor and their start positions are
enumerated.  Within one transition all of y's windows share a single
image, chosen as their pooled median.

Spans are 1-based inclusive pairs (s, e); an empty factor at boundary
position s is encoded (s, s-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import locality, validate_marking_sequence
from .core import (
    BudgetExceeded,
    Distance,
    INFINITE,
    InvalidWitness,
    NotKLocal,
    Pattern,
    Symbol,
    Var,
    Word,
    hamming_distance,
)
from .unary import median_string

DEFAULT_STATE_LIMIT = 10**8


@dataclass(frozen=True)
class MarkingSequence:
    """Variable order witnessing that a pattern is k-local."""

    order: tuple[str, ...]
    k: int


@dataclass(frozen=True)
class AlignmentTable:
    """Sparse table of one marking step.

    ``blocks`` are the pattern index intervals of the marked factors;
    ``entries`` maps flattened span tuples (s1, e1, ..., sj, ej) to the
    minimal mismatch count of aligning factor g to word span (sg, eg)
    simultaneously.
    """

    step: int
    blocks: tuple[tuple[int, int], ...]
    entries: dict[tuple[int, ...], Distance]


def find_marking_sequence(pattern: Pattern, k: int) -> MarkingSequence:
    """A witness order of locality at most k, or NotKLocal.

    The order returned witnesses the pattern's own locality number,
    which may be smaller than k.
    """
    if k < 0:
        raise ValueError("locality bound must be >= 0")
    loc, order = locality(pattern)
    if loc > k:
        raise NotKLocal(f"pattern is {loc}-local, no marking sequence fits k={k}")
    return MarkingSequence(order, loc)


def _marked_intervals(syms: tuple[Symbol, ...],
                      marked: frozenset[str]) -> tuple[tuple[int, int], ...]:
    """Maximal index intervals of marked variables and terminals that
    contain at least one variable."""
    out: list[tuple[int, int]] = []
    m = len(syms)
    i = 0
    while i < m:
        s = syms[i]
        if isinstance(s, Var) and s.name not in marked:
            i += 1
            continue
        j = i
        has_var = False
        while j < m and (not isinstance(syms[j], Var) or syms[j].name in marked):
            has_var = has_var or isinstance(syms[j], Var)
            j += 1
        if has_var:
            out.append((i, j - 1))
        i = j
    return tuple(out)


@dataclass(frozen=True)
class _Plan:
    """How one new marked factor is assembled: the run of old factors it
    absorbs and the glue runs (new variable + terminals) around them.
    ``glues`` has old_count + 1 entries."""

    first_old: int
    old_count: int
    glues: tuple[tuple[Symbol, ...], ...]
    gterms: tuple[int, ...]
    gvars: tuple[int, ...]


def _plans(syms: tuple[Symbol, ...], old_iv: tuple[tuple[int, int], ...],
           new_iv: tuple[tuple[int, int], ...]) -> tuple[_Plan, ...]:
    plans: list[_Plan] = []
    used = 0
    for lo, hi in new_iv:
        first = used
        segments: list[tuple[Symbol, ...]] = []
        pos = lo
        while used < len(old_iv) and old_iv[used][1] <= hi:
            olo, ohi = old_iv[used]
            segments.append(syms[pos:olo])
            pos = ohi + 1
            used += 1
        segments.append(syms[pos:hi + 1])
        plans.append(_Plan(
            first_old=first,
            old_count=used - first,
            glues=tuple(segments),
            gterms=tuple(sum(1 for s in g if not isinstance(s, Var)) for g in segments),
            gvars=tuple(sum(1 for s in g if isinstance(s, Var)) for g in segments),
        ))
    if used != len(old_iv):
        raise AssertionError("marked factors shrank between steps")
    return tuple(plans)


def _glue_cost(word: Word, glue: tuple[Symbol, ...], start: int, image_len: int,
               windows: list[tuple[int, int]]) -> int:
    """Fixed terminal mismatches of a glue run placed at a word position,
    collecting the new variable's window spans on the way."""
    pos = start
    cost = 0
    for s in glue:
        if isinstance(s, Var):
            windows.append((pos, pos + image_len - 1))
            pos += image_len
        else:
            if word[pos - 1] != s:
                cost += 1
            pos += 1
    return cost


def klocal_tables(word: Word, pattern: Pattern, seq: MarkingSequence, *,
                  state_limit: int = DEFAULT_STATE_LIMIT) -> list[AlignmentTable]:
    """All alignment tables of the marking-order dynamic program."""
    syms = pattern.symbols
    n = len(word)
    tables: list[AlignmentTable] = []
    old_iv: tuple[tuple[int, int], ...] = ()
    table: dict[tuple[int, ...], Distance] = {(): 0}
    for step in range(1, len(seq.order) + 1):
        marked = frozenset(seq.order[:step])
        new_iv = _marked_intervals(syms, marked)
        plans = _plans(syms, old_iv, new_iv)
        standalone = sum(1 for p in plans if p.old_count == 0)
        visits = len(table) * (n + 1) ** (1 + standalone)
        if visits > state_limit:
            raise BudgetExceeded(
                f"marking step {step} needs about {visits} tuple visits, "
                f"over the limit of {state_limit}")
        table = _transition(word, n, table, plans)
        old_iv = new_iv
        tables.append(AlignmentTable(step, new_iv, dict(table)))
    return tables


def _transition(word: Word, n: int, old: dict[tuple[int, ...], Distance],
                plans: tuple[_Plan, ...]) -> dict[tuple[int, ...], Distance]:
    out: dict[tuple[int, ...], Distance] = {}
    j = len(plans)
    for ell in range(n + 1):
        glue_len = [tuple(t + v * ell for t, v in zip(p.gterms, p.gvars))
                    for p in plans]

        def walk(r: int, prev_end: int, acc: int, anchors: tuple[int, ...],
                 spans: list[int], windows: list[tuple[int, int]]) -> None:
            if r == j:
                total = acc
                if ell and windows:
                    total += median_string(
                        [word[a - 1:b] for a, b in windows]).total_distance
                key = tuple(spans)
                cur = out.get(key)
                if cur is None or total < cur:
                    out[key] = total
                return
            plan = plans[r]
            lengths = glue_len[r]
            wmark = len(windows)
            if plan.old_count == 0:
                elen = lengths[0]
                for s in range(prev_end + 1, n - elen + 2):
                    cost = _glue_cost(word, plan.glues[0], s, ell, windows)
                    spans.extend((s, s + elen - 1))
                    walk(r + 1, s + elen - 1, acc + cost, anchors, spans, windows)
                    del spans[-2:]
                    del windows[wmark:]
                return
            g0 = plan.first_old
            for t in range(1, plan.old_count):
                gap = anchors[2 * (g0 + t)] - anchors[2 * (g0 + t) - 1] - 1
                if gap != lengths[t]:
                    return
            start = anchors[2 * g0] - lengths[0]
            end = anchors[2 * (g0 + plan.old_count) - 1] + lengths[-1]
            if start < prev_end + 1 or end > n:
                return
            cost = _glue_cost(word, plan.glues[0], start, ell, windows)
            for t in range(1, plan.old_count):
                cost += _glue_cost(word, plan.glues[t],
                                   anchors[2 * (g0 + t) - 1] + 1, ell, windows)
            cost += _glue_cost(word, plan.glues[-1],
                               anchors[2 * (g0 + plan.old_count) - 1] + 1, ell, windows)
            spans.extend((start, end))
            walk(r + 1, end, acc + cost, anchors, spans, windows)
            del spans[-2:]
            del windows[wmark:]

        for anchors, base in old.items():
            walk(0, 0, base, anchors, [], [])
    return out


def min_mismatch_klocal(word: Word, pattern: Pattern,
                        seq: MarkingSequence | None = None, *,
                        k: int | None = None,
                        state_limit: int = DEFAULT_STATE_LIMIT) -> Distance:
    """Exact minimum-mismatch distance along a marking sequence.

    With no sequence given, one witnessing the pattern's own locality is
    computed (and checked against k when that is supplied).  A supplied
    sequence is validated and InvalidWitness raised when it does not
    witness its claimed locality.
    """
    n = len(word)
    if pattern.is_terminal_only():
        if len(pattern) != n:
            return INFINITE
        return hamming_distance(pattern.terminal_word(), word)
    if seq is None:
        seq = find_marking_sequence(pattern, k if k is not None else len(pattern.var_names))
    elif not validate_marking_sequence(pattern, seq.order, seq.k):
        raise InvalidWitness(
            f"order {seq.order!r} does not keep at most {seq.k} marked blocks")
    tables = klocal_tables(word, pattern, seq, state_limit=state_limit)
    return tables[-1].entries.get((1, n), INFINITE)


def estimate_state_space(pattern: Pattern, n: int, seq: MarkingSequence) -> int:
    """Dense tuple-space bound max over steps of (n+1)^(2*j_h), used to
    refuse hopeless inputs before any table is built."""
    syms = pattern.symbols
    worst = 1
    for step in range(1, len(seq.order) + 1):
        j = len(_marked_intervals(syms, frozenset(seq.order[:step])))
        worst = max(worst, (n + 1) ** (2 * j))
    return worst
