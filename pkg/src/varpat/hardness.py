"""Hard-instance generators with tiny ground-truth solvers.

Two constructions turn classic hard problems into matching instances:

* orthogonal vectors -> regular matching: coordinate gadgets chain into
  one word gadget per vector, the word doubles the gadget list so any
  single vector pair can align, and the budget n*(d+1)-1 is met exactly
  when an orthogonal pair exists;
* consensus patterns -> one-repeated-variable matching: each input
  string gets a gadget with one floating occurrence of the repeated
  variable, and a tail gadget pins the image length to m at the cost of
  m extra mismatches, so the optimum shifts by exactly m.

Both emit ready-to-solve Instances whose codec field records the
letter-to-id mapping, keeping generated files reproducible bit for bit.
The naive solvers (quadratic pair scan, factor-tuple enumeration with
per-tuple medians) provide the ground truth for soundness tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .core import BudgetExceeded, Pattern, Symbol, Var, Word
from .formats import AsciiCodec, Instance
from .unary import median_string

# Glyph ids for generated regular instances: payload bits first, then
# the filler letters.
OV_LETTERS = {"0": 1, "1": 2, "a": 3, "b": 4, "#": 5, "$": 6}


@dataclass(frozen=True)
class OvInstance:
    """Two equal-sized sets of 0/1 vectors of common dimension."""

    u_vectors: tuple[tuple[int, ...], ...]
    v_vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.u_vectors or len(self.u_vectors) != len(self.v_vectors):
            raise ValueError("need equally many vectors on both sides")
        d = len(self.u_vectors[0])
        if d < 1:
            raise ValueError("dimension must be >= 1")
        for vec in self.u_vectors + self.v_vectors:
            if len(vec) != d:
                raise ValueError("all vectors must share one dimension")
            if any(b not in (0, 1) for b in vec):
                raise ValueError("vector entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.u_vectors)

    @property
    def d(self) -> int:
        return len(self.u_vectors[0])


@dataclass(frozen=True)
class CpInstance:
    """Consensus-patterns input: k strings of common length, target
    factor length m, mismatch budget delta <= m*k."""

    words: tuple[Word, ...]
    m: int
    delta: int

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("need at least one string")
        ell = len(self.words[0])
        if any(len(u) != ell for u in self.words):
            raise ValueError("all strings must share one length")
        if not 1 <= self.m <= ell:
            raise ValueError("factor length must be between 1 and the string length")
        if not 0 <= self.delta <= self.m * len(self.words):
            raise ValueError("budget must be between 0 and m*k")

    @property
    def k(self) -> int:
        return len(self.words)

    @property
    def ell(self) -> int:
        return len(self.words[0])

    @property
    def sigma(self) -> int:
        return max(max(u) for u in self.words)


def _coord_a(bit: int) -> str:
    return "001" if bit == 0 else "100"


def _coord_b(bit: int) -> str:
    return "000" if bit == 0 else "011"


def _vector_gadget_a(vec: tuple[int, ...]) -> str:
    d = len(vec)
    x_run = "###".join(["010"] * d)
    return "bba" + "###".join(_coord_a(b) for b in vec) + "bbb" + x_run


def _vector_gadget_b(vec: tuple[int, ...]) -> str:
    return "bba" + "###".join(_coord_b(b) for b in vec)


def ov_to_reg(inst: OvInstance) -> Instance:
    """Regular matching instance that accepts at budget n*(d+1)-1 exactly
    when the vector sets contain an orthogonal pair.

    The word lists every vector gadget twice with separator runs, the
    pattern threads the query gadgets between spacer variables.
    """
    n, d = inst.n, inst.d
    codec = AsciiCodec(dict(OV_LETTERS))
    gadgets = [_vector_gadget_a(u) for u in inst.u_vectors]
    big_m = len(gadgets[0])
    sep = "$" * big_m
    word_text = sep.join([""] + gadgets + gadgets + [""])
    symbols: list[Symbol] = [Var("x")]
    sep_ids = codec.encode_word(sep)
    for j, v in enumerate(inst.v_vectors, start=1):
        symbols.extend(sep_ids)
        symbols.append(Var(f"x{j}"))
        symbols.extend(codec.encode_word(_vector_gadget_b(v)))
        symbols.append(Var(f"y{j}"))
    symbols.extend(sep_ids)
    symbols.append(Var("y"))
    return Instance.build(
        word=codec.encode_word(word_text),
        pattern=Pattern(tuple(symbols)),
        delta=n * (d + 1) - 1,
        sigma=len(OV_LETTERS),
        codec=codec,
    )


def solve_ov_naive(inst: OvInstance) -> bool:
    """Quadratic scan for an orthogonal pair."""
    return any(
        all(a * b == 0 for a, b in zip(u, v))
        for u in inst.u_vectors
        for v in inst.v_vectors
    )


def _cp_codec(sigma: int) -> AsciiCodec | None:
    if sigma > 10:
        return None
    table = {str(i): i + 1 for i in range(sigma)}
    for off, glyph in enumerate("abcd$", start=1):
        table[glyph] = sigma + off
    return AsciiCodec(table)


def cp_to_1repvar(inst: CpInstance) -> Instance:
    """One-repeated-variable instance whose optimum is the consensus
    optimum plus m.

    Each input string is followed by a long two-letter oscillation that
    must self-align, which forces the floating variable occurrence next
    to it to land inside that string; the tail oscillation over two more
    letters pins the image length to m against a final separator run.
    """
    k, ell, m = inst.k, inst.ell, inst.m
    sigma = inst.sigma
    big_m = (k * ell) ** 2
    a, b, c, d, dollar = (sigma + off for off in range(1, 6))
    ab_run = ((a,) * big_m + (b,) * big_m) * big_m
    cd_run = ((c,) * big_m + (d,) * big_m) * big_m
    word: list[int] = []
    for u in inst.words:
        word.extend(u)
        word.extend(ab_run)
    word.extend(cd_run)
    word.extend((dollar,) * m)
    symbols: list[Symbol] = []
    for i in range(1, k + 1):
        symbols.append(Var(f"y{i}"))
        symbols.append(Var("x"))
        symbols.append(Var(f"z{i}"))
        symbols.extend(ab_run)
    symbols.extend(cd_run)
    symbols.append(Var("x"))
    return Instance.build(
        word=tuple(word),
        pattern=Pattern(tuple(symbols)),
        delta=inst.delta + m,
        sigma=sigma + 5,
        codec=_cp_codec(sigma),
    )


def solve_cp_naive(inst: CpInstance, budget: int = 10**7) -> int:
    """Exact consensus optimum by enumerating factor tuples.

    For a fixed tuple of factors the best center string is their median,
    so the sigma^m center enumeration collapses to one median per tuple;
    the budget guard still uses the full product as its size estimate.
    """
    k, ell, m = inst.k, inst.ell, inst.m
    width = ell - m + 1
    size = (inst.sigma ** m) * (width ** k)
    if size > budget:
        raise BudgetExceeded(
            f"consensus enumeration size {size} exceeds the budget {budget}")
    best = m * k + 1
    for starts in product(range(width), repeat=k):
        factors = [inst.words[i][s:s + m] for i, s in enumerate(starts)]
        best = min(best, median_string(factors).total_distance)
        if best == 0:
            break
    return best


def sample_ov(n: int, d: int, rng: random.Random, *,
              planted_orthogonal: bool = False) -> OvInstance:
    """Random vector sets; optionally force one orthogonal pair."""
    u = [tuple(rng.randint(0, 1) for _ in range(d)) for _ in range(n)]
    v = [tuple(rng.randint(0, 1) for _ in range(d)) for _ in range(n)]
    if planted_orthogonal:
        i = rng.randrange(n)
        j = rng.randrange(n)
        v[j] = tuple(0 if u[i][t] else v[j][t] for t in range(d))
    return OvInstance(tuple(u), tuple(v))


def sample_cp(k: int, ell: int, m: int, rng: random.Random, *,
              sigma: int = 2) -> CpInstance:
    """Random consensus instance over the alphabet 1..sigma."""
    words = tuple(
        tuple(rng.randint(1, sigma) for _ in range(ell)) for _ in range(k))
    return CpInstance(words, m, rng.randint(0, m * k))
