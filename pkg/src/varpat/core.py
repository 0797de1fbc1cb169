"""Core types and operations for patterns with variables.

A word is a tuple of letters (positive ints over an integer alphabet
{1..sigma}).  A pattern is a sequence of letters and variables; a
substitution maps every variable name to a word (possibly empty), and
applying it yields a plain word.  Mismatch counts between a pattern and
a word are always taken as the minimum Hamming distance over all
substituted images of the same length as the word; ``INFINITE`` stands
for "no substitution produces the right length".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Word = tuple[int, ...]

INFINITE: float = math.inf

# int when finite, INFINITE otherwise; INFINITE propagates through min/+.
Distance = int | float


def is_finite(d: Distance) -> bool:
    return d != INFINITE


class VarpatError(Exception):
    """Base class for all library errors."""


class LengthMismatch(VarpatError):
    """Hamming distance of two words of different lengths."""


class SpanLengthMismatch(VarpatError):
    """Bounded mismatch walk over spans of different lengths."""


class PatternLongerThanWord(VarpatError):
    """Sliding window block longer than the word it slides over."""


class MissingVariable(VarpatError):
    """Substitution lacks an image for a variable of the pattern."""


class NotNonCross(VarpatError):
    """Pattern is not a concatenation of single-variable segments."""


class NotOneRepVar(VarpatError):
    """Pattern repeats more than one distinct variable."""


class NotRegular(VarpatError):
    """Pattern repeats a variable where none may repeat."""


class NotKLocal(VarpatError):
    """Pattern admits no marking sequence within the requested locality."""


class InvalidWitness(VarpatError):
    """Marking sequence does not witness the claimed locality."""


class LengthInfeasible(VarpatError):
    """Fixed-length assignment cannot reach the target length."""


class BudgetExceeded(VarpatError):
    """Enumeration size above the configured budget."""


class ParseError(VarpatError):
    """Malformed instance text or JSON."""


class UnsupportedClass(VarpatError):
    """No implemented algorithm applies to the pattern."""


@dataclass(frozen=True, slots=True)
class Var:
    """A variable occurrence; identity is the name."""

    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


Symbol = int | Var

# Substitutions are keyed by variable name.
Substitution = dict[str, Word]


@dataclass(frozen=True)
class Pattern:
    """Immutable sequence of terminal letters and variables."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("pattern must be non-empty")
        for s in self.symbols:
            if isinstance(s, int):
                if s < 1:
                    raise ValueError(f"terminal letters must be >= 1, got {s}")
            elif not isinstance(s, Var):
                raise TypeError(f"pattern symbol must be int or Var, got {type(s)!r}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    @property
    def var_names(self) -> tuple[str, ...]:
        """Distinct variable names in order of first occurrence."""
        seen: list[str] = []
        for s in self.symbols:
            if isinstance(s, Var) and s.name not in seen:
                seen.append(s.name)
        return tuple(seen)

    @property
    def var_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.symbols:
            if isinstance(s, Var):
                counts[s.name] = counts.get(s.name, 0) + 1
        return counts

    @property
    def terminal_count(self) -> int:
        return sum(1 for s in self.symbols if isinstance(s, int))

    def is_terminal_only(self) -> bool:
        return all(isinstance(s, int) for s in self.symbols)

    def terminal_word(self) -> Word:
        if not self.is_terminal_only():
            raise ValueError("pattern contains variables")
        return tuple(s for s in self.symbols if isinstance(s, int))


def pattern_of(*symbols: Symbol | str) -> Pattern:
    """Convenience constructor; bare strings become variables."""
    out: list[Symbol] = []
    for s in symbols:
        if isinstance(s, str):
            out.append(Var(s))
        else:
            out.append(s)
    return Pattern(tuple(out))


def apply_substitution(pattern: Pattern, subst: Substitution) -> Word:
    """Replace every variable by its image and flatten to a word."""
    out: list[int] = []
    for s in pattern.symbols:
        if isinstance(s, Var):
            try:
                out.extend(subst[s.name])
            except KeyError:
                raise MissingVariable(f"no image for variable {s.name!r}") from None
        else:
            out.append(s)
    return tuple(out)


def substituted_length(pattern: Pattern, lengths: dict[str, int]) -> int:
    """Length of the image under any substitution with the given image lengths."""
    total = 0
    for s in pattern.symbols:
        if isinstance(s, Var):
            try:
                total += lengths[s.name]
            except KeyError:
                raise MissingVariable(f"no length for variable {s.name!r}") from None
        else:
            total += 1
    return total


def hamming_distance(u: Word, v: Word) -> int:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths differ: {len(u)} vs {len(v)}")
    if len(u) >= 1024:
        import numpy as np

        return int(np.count_nonzero(np.asarray(u, dtype=np.int64)
                                    != np.asarray(v, dtype=np.int64)))
    return sum(1 for a, b in zip(u, v) if a != b)


@dataclass(frozen=True)
class PeeledInstance:
    """Terminal affixes of the pattern aligned and accounted for.

    The core pattern starts and ends with a variable (or is empty when the
    pattern had no variables at all).  Any mismatch distance of the original
    instance equals ``affix_mismatches`` plus the distance of the core
    instance; ``feasible`` is False when the affixes alone cannot fit.
    """

    core_pattern: tuple[Symbol, ...]
    core_word: Word
    affix_mismatches: int
    feasible: bool


def peel_affixes(pattern: Pattern, word: Word) -> PeeledInstance:
    """Strip the maximal terminal prefix and suffix of the pattern.

    The prefix must align with the start of the word and the suffix with its
    end, so their mismatches are fixed; the remaining core is matched against
    the remaining word factor.
    """
    syms = pattern.symbols
    n = len(word)
    first_var = next((i for i, s in enumerate(syms) if isinstance(s, Var)), None)
    if first_var is None:
        if len(syms) != n:
            return PeeledInstance((), (), 0, False)
        return PeeledInstance((), (), hamming_distance(pattern.terminal_word(), word), True)
    last_var = max(i for i, s in enumerate(syms) if isinstance(s, Var))
    prefix = tuple(s for s in syms[:first_var])
    suffix = tuple(s for s in syms[last_var + 1:])
    a, b = len(prefix), len(suffix)
    if a + b > n:
        return PeeledInstance((), (), 0, False)
    mism = 0
    if a:
        mism += hamming_distance(prefix, word[:a])
    if b:
        mism += hamming_distance(suffix, word[n - b:])
    core = syms[first_var:last_var + 1]
    return PeeledInstance(core, word[a:n - b], mism, True)
