"""Structural classification of patterns.

Determines which matching algorithms apply: whether no variable repeats
(regular), whether a single distinct variable is used (unary), whether
variable scopes are pairwise disjoint (non-crossing), whether at most
one variable repeats, and the locality number, i.e. the smallest k such
that the variables can be marked one by one while the marked occurrences
always form at most k contiguous blocks in the variable skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BudgetExceeded, Pattern, Var

# Subset DP over variables; beyond this many distinct variables the
# exhaustive locality search is refused (non-crossing patterns are exempt,
# they are always 1-local).
LOCALITY_VAR_LIMIT = 16


@dataclass(frozen=True)
class PatternClass:
    is_regular: bool
    is_unary: bool
    is_noncross: bool
    is_one_rep_var: bool
    scd: int
    repeated_var: str | None
    x_block_count: int
    locality: int
    marking_witness: tuple[str, ...]


def scope_coincidence_degree(pattern: Pattern) -> int:
    """Maximum number of variables whose first-to-last occurrence ranges
    share a common position."""
    first: dict[str, int] = {}
    last: dict[str, int] = {}
    for i, s in enumerate(pattern.symbols):
        if isinstance(s, Var):
            first.setdefault(s.name, i)
            last[s.name] = i
    best = 0
    for i in range(len(pattern.symbols)):
        cover = sum(1 for x in first if first[x] <= i <= last[x])
        best = max(best, cover)
    return best


def variable_skeleton(pattern: Pattern) -> tuple[str, ...]:
    """Variable occurrences with terminals removed."""
    return tuple(s.name for s in pattern.symbols if isinstance(s, Var))


def count_marked_blocks(skeleton: tuple[str, ...], marked: frozenset[str] | set[str]) -> int:
    blocks = 0
    inside = False
    for name in skeleton:
        if name in marked:
            if not inside:
                blocks += 1
            inside = True
        else:
            inside = False
    return blocks


def repeated_variable_blocks(pattern: Pattern, name: str) -> int:
    """Number of length-maximal factors containing only ``name`` and
    terminals; such factors swallow adjacent terminal runs."""
    blocks = 0
    run_has_x = False
    for s in pattern.symbols:
        if isinstance(s, Var) and s.name != name:
            if run_has_x:
                blocks += 1
            run_has_x = False
        elif isinstance(s, Var):
            run_has_x = True
    if run_has_x:
        blocks += 1
    return blocks


def _locality_subset_dp(skeleton: tuple[str, ...], names: tuple[str, ...]) -> tuple[int, tuple[str, ...]]:
    """Minimum over marking orders of the maximum block count, with one
    optimal order.  cost(S) = max(blocks(S), min over x in S of cost(S\\{x}))."""
    p = len(names)
    index = {x: i for i, x in enumerate(names)}
    skel_bits = [index[x] for x in skeleton]

    def blocks_of(mask: int) -> int:
        blocks = 0
        inside = False
        for b in skel_bits:
            if mask >> b & 1:
                if not inside:
                    blocks += 1
                inside = True
            else:
                inside = False
        return blocks

    full = (1 << p) - 1
    cost = [0] * (full + 1)
    pred = [0] * (full + 1)
    for mask in range(1, full + 1):
        best = None
        best_bit = 0
        m = mask
        while m:
            bit = (m & -m).bit_length() - 1
            sub = cost[mask & ~(1 << bit)]
            if best is None or sub < best:
                best, best_bit = sub, bit
            m &= m - 1
        cost[mask] = max(blocks_of(mask), best)
        pred[mask] = best_bit
    order: list[str] = []
    mask = full
    while mask:
        bit = pred[mask]
        order.append(names[bit])
        mask &= ~(1 << bit)
    order.reverse()
    return cost[full], tuple(order)


def locality(pattern: Pattern) -> tuple[int, tuple[str, ...]]:
    """Locality number and a witness marking order.

    All-terminal patterns are 0-local.  Patterns with pairwise disjoint
    variable scopes are 1-local with the first-occurrence order as witness;
    for the rest an exhaustive subset search is run (refused above
    LOCALITY_VAR_LIMIT distinct variables).
    """
    names = pattern.var_names
    if not names:
        return 0, ()
    if scope_coincidence_degree(pattern) <= 1:
        return 1, names
    if len(names) > LOCALITY_VAR_LIMIT:
        raise BudgetExceeded(
            f"locality search over {len(names)} variables exceeds the "
            f"subset limit of {LOCALITY_VAR_LIMIT}")
    return _locality_subset_dp(variable_skeleton(pattern), names)


def validate_marking_sequence(pattern: Pattern, order: tuple[str, ...], k: int) -> bool:
    """True iff marking variables in this order keeps at most k marked
    blocks in the skeleton at every step."""
    names = pattern.var_names
    if sorted(order) != sorted(names):
        return False
    skeleton = variable_skeleton(pattern)
    marked: set[str] = set()
    for x in order:
        marked.add(x)
        if count_marked_blocks(skeleton, marked) > k:
            return False
    return True


def classify(pattern: Pattern) -> PatternClass:
    counts = pattern.var_counts
    names = pattern.var_names
    p = len(names)
    scd = scope_coincidence_degree(pattern)
    is_regular = all(c == 1 for c in counts.values())
    is_unary = p == 1
    is_noncross = scd <= 1
    repeated = [x for x, c in counts.items() if c >= 2]
    is_one_rep = len(repeated) <= 1
    repeated_var: str | None = None
    x_blocks = 0
    if is_one_rep:
        if repeated:
            repeated_var = repeated[0]
        elif is_unary:
            repeated_var = names[0]
        if repeated_var is not None:
            x_blocks = repeated_variable_blocks(pattern, repeated_var)
    loc, witness = locality(pattern)
    return PatternClass(
        is_regular=is_regular,
        is_unary=is_unary,
        is_noncross=is_noncross,
        is_one_rep_var=is_one_rep,
        scd=scd,
        repeated_var=repeated_var,
        x_block_count=x_blocks,
        locality=loc,
        marking_witness=witness,
    )
