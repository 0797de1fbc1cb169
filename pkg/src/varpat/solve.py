"""One-call solving: classify, dispatch, verify.

The automatic dispatch walks the class hierarchy from cheapest solver to
most general (single variable, regular, non-crossing, one repeated
variable, k-local within the state budget, brute force within the
enumeration budget) and refuses the instance only when even brute force
would blow its budget.  Any witness a solver produces is re-applied to
the pattern before it is reported, so a reported (distance, witness)
pair is always self-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import PatternClass, classify
from .core import (
    INFINITE,
    BudgetExceeded,
    Distance,
    InvalidWitness,
    Pattern,
    Substitution,
    UnsupportedClass,
    Word,
    apply_substitution,
    hamming_distance,
    is_finite,
    peel_affixes,
)
from .klocal import (
    DEFAULT_STATE_LIMIT,
    MarkingSequence,
    estimate_state_space,
    min_mismatch_klocal,
)
from .noncross import min_mismatch_noncross
from .onerep import (
    PtasConfig,
    approx2_search,
    min_mismatch_1repvar,
    ptas_search,
)
from .oracle import DEFAULT_BUDGET, brute_force_min_mismatch
from .regular import (
    RegularPattern,
    min_mismatch_reg,
    mismatch_reg,
    mismatch_reg_dp,
    solve_regular,
)
from .unary import min_mismatch_1var

ALGORITHMS = (
    "auto",
    "exact-reg",
    "dp-reg",
    "fast-reg",
    "1var",
    "noncross",
    "1rep",
    "approx2",
    "ptas",
    "klocal",
    "oracle",
)


@dataclass(frozen=True)
class SolveResult:
    pattern_class: str
    algorithm: str
    distance: Distance
    witness: Substitution | None
    lcs_queries: int
    accepted: bool | None

    def as_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {name: list(image)
                       for name, image in sorted(self.witness.items())}
        return {
            "class": self.pattern_class,
            "algorithm": self.algorithm,
            "distance": None if not is_finite(self.distance) else self.distance,
            "witness": witness,
            "lcs_queries": self.lcs_queries,
            "accepted": self.accepted,
        }


def class_label(pc: PatternClass) -> str:
    if pc.is_unary:
        return "1Var"
    if pc.is_regular:
        return "Reg"
    if pc.is_noncross:
        return "NonCross"
    if pc.is_one_rep_var:
        return "1RepVar"
    return f"{pc.locality}-local"


def _pick_algorithm(pattern: Pattern, pc: PatternClass, n: int, max_k: int,
                    state_limit: int) -> str:
    if pattern.is_terminal_only() or pc.is_unary:
        return "1var" if pc.is_unary else "fast-reg"
    if pc.is_regular:
        return "fast-reg"
    if pc.is_noncross:
        return "noncross"
    if pc.is_one_rep_var:
        return "1rep"
    if pc.locality <= max_k:
        seq = MarkingSequence(pc.marking_witness, pc.locality)
        if estimate_state_space(pattern, n, seq) <= state_limit:
            return "klocal"
    return "oracle"


def _regular_decision(word: Word, pattern: Pattern, delta: int,
                      strict_gaps: bool) -> tuple[Distance, Substitution | None, int, bool]:
    """Budgeted decision run on the regular path (no minimization)."""
    peeled = peel_affixes(pattern, word)
    if not peeled.feasible:
        return INFINITE, None, 0, False
    rest = delta - peeled.affix_mismatches
    if rest < 0:
        return INFINITE, None, 0, False
    if not peeled.core_pattern:
        return peeled.affix_mismatches, {}, 0, True
    core = Pattern(peeled.core_pattern)
    if core.is_terminal_only():
        d = peeled.affix_mismatches + hamming_distance(
            core.terminal_word(), peeled.core_word)
        return d, ({} if d <= delta else None), 0, d <= delta
    rp = RegularPattern.from_symbols(peeled.core_pattern)
    res = mismatch_reg(peeled.core_word, rp, rest, strict_gaps=strict_gaps)
    if not res.accepted:
        return INFINITE, None, res.queries, False
    return (peeled.affix_mismatches + res.distance, None,
            res.queries, True)


def solve(word: Word, pattern: Pattern, *, algo: str = "auto",
          delta: int | None = None, r: int = 3, k: int | None = None,
          max_k: int = 3, budget: int = DEFAULT_BUDGET,
          state_limit: int = DEFAULT_STATE_LIMIT, strict_gaps: bool = False,
          union_approx2: bool = True, sigma: int | None = None) -> SolveResult:
    """Solve one instance with the requested or auto-chosen algorithm."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    pc = classify(pattern)
    label = "terminal" if pattern.is_terminal_only() else class_label(pc)
    n = len(word)
    chosen = algo
    if algo == "auto":
        chosen = _pick_algorithm(pattern, pc, n, max_k, state_limit)
        if chosen == "oracle":
            # Auto mode only falls back to brute force when it can
            # afford it; an oversized instance is unsupported rather
            # than a budget error the caller never asked for.
            try:
                return _finish(label, "oracle", word, pattern, delta,
                               *_run_oracle(word, pattern, budget, sigma))
            except BudgetExceeded as exc:
                raise UnsupportedClass(
                    f"pattern is {pc.locality}-local; both the k-local "
                    "table and brute force exceed their budgets") from exc

    if chosen == "fast-reg" and delta is not None and not pattern.is_terminal_only():
        d, witness, queries, accepted = _regular_decision(
            word, pattern, delta, strict_gaps)
        return SolveResult(label, "fast-reg", d, witness, queries, accepted)

    distance, witness, queries = _run(chosen, word, pattern, r=r, k=k,
                                      budget=budget, state_limit=state_limit,
                                      strict_gaps=strict_gaps,
                                      union_approx2=union_approx2, sigma=sigma)
    return _finish(label, chosen, word, pattern, delta,
                   distance, witness, queries)


def _run_oracle(word, pattern, budget, sigma):
    res = brute_force_min_mismatch(word, pattern, budget=budget, sigma=sigma)
    return res.distance, res.witness, 0


def _run(chosen: str, word: Word, pattern: Pattern, *, r, k, budget,
         state_limit, strict_gaps, union_approx2,
         sigma) -> tuple[Distance, Substitution | None, int]:
    if chosen == "exact-reg":
        peeled = peel_affixes(pattern, word)
        if not peeled.feasible:
            return INFINITE, None, 0
        if not peeled.core_pattern or Pattern(peeled.core_pattern).is_terminal_only():
            res = solve_regular(word, pattern.symbols, want_witness=True,
                                strict_gaps=strict_gaps)
            return res.distance, res.witness, res.queries
        rp = RegularPattern.from_symbols(peeled.core_pattern)
        res = min_mismatch_reg(peeled.core_word, rp, strict_gaps=strict_gaps,
                               want_witness=True)
        if not is_finite(res.distance):
            return INFINITE, None, res.queries
        return (peeled.affix_mismatches + res.distance, res.witness,
                res.queries)
    if chosen == "dp-reg":
        peeled = peel_affixes(pattern, word)
        if not peeled.feasible:
            return INFINITE, None, 0
        if not peeled.core_pattern or Pattern(peeled.core_pattern).is_terminal_only():
            res = solve_regular(word, pattern.symbols, strict_gaps=strict_gaps)
            return res.distance, res.witness, res.queries
        rp = RegularPattern.from_symbols(peeled.core_pattern)
        d = mismatch_reg_dp(peeled.core_word, rp, strict_gaps=strict_gaps)
        if not is_finite(d):
            return INFINITE, None, 0
        return peeled.affix_mismatches + d, None, 0
    if chosen == "fast-reg":
        res = solve_regular(word, pattern.symbols, want_witness=True,
                            strict_gaps=strict_gaps)
        return res.distance, res.witness, res.queries
    if chosen == "1var":
        if len(pattern.var_names) != 1:
            raise UnsupportedClass(
                "the single-variable solver needs exactly one distinct variable")
        res = min_mismatch_1var(word, pattern, sigma)
        witness = None
        if is_finite(res.distance) and pattern.var_names:
            witness = {pattern.var_names[0]: res.image}
        elif is_finite(res.distance):
            witness = {}
        return res.distance, witness, 0
    if chosen == "noncross":
        return min_mismatch_noncross(word, pattern), None, 0
    if chosen == "1rep":
        res = min_mismatch_1repvar(word, pattern)
        return res.distance, res.witness, 0
    if chosen == "approx2":
        if pattern.is_terminal_only():
            res = solve_regular(word, pattern.symbols, want_witness=True)
            return res.distance, res.witness, res.queries
        search = approx2_search(word, pattern)
        return search.best, search.witness(), 0
    if chosen == "ptas":
        if pattern.is_terminal_only():
            res = solve_regular(word, pattern.symbols, want_witness=True)
            return res.distance, res.witness, res.queries
        if sigma is None:
            sigma = max(max(word, default=1),
                        max((s for s in pattern.symbols if isinstance(s, int)),
                            default=1))
        search = ptas_search(word, pattern, PtasConfig(r, sigma),
                             union_approx2)
        return search.best, search.witness(), 0
    if chosen == "klocal":
        d = min_mismatch_klocal(word, pattern, k=k, state_limit=state_limit)
        return d, None, 0
    if chosen == "oracle":
        return _run_oracle(word, pattern, budget, sigma)
    raise ValueError(f"unknown algorithm {chosen!r}")


def _finish(label: str, chosen: str, word: Word, pattern: Pattern,
            delta: int | None, distance: Distance,
            witness: Substitution | None, queries: int) -> SolveResult:
    if witness is not None and is_finite(distance):
        redone = hamming_distance(apply_substitution(pattern, witness), word)
        if redone != distance:
            raise InvalidWitness(
                f"witness re-verification got {redone}, solver said {distance}")
    accepted = None
    if delta is not None:
        accepted = is_finite(distance) and distance <= delta
    return SolveResult(label, chosen, distance, witness, queries, accepted)
