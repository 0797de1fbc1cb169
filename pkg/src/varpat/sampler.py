"""Seeded random instances, one generator per pattern class.

Words are drawn near an exact image of the pattern most of the time
(exact, lightly mutated, or length-perturbed uniform), so corpora mix
matchable, almost-matchable and infeasible cases instead of drowning in
far-off uniform noise.
"""

from __future__ import annotations

import random

from .classify import locality
from .core import (
    Pattern,
    Symbol,
    Var,
    Word,
    apply_substitution,
    substituted_length,
)
from .formats import Instance

CLASS_NAMES = ("regular", "1var", "noncross", "1rep", "klocal")


def random_word(rng: random.Random, n: int, sigma: int) -> Word:
    return tuple(rng.randint(1, sigma) for _ in range(n))


def _run(rng: random.Random, sigma: int, max_run: int) -> list[Symbol]:
    return [rng.randint(1, sigma) for _ in range(rng.randint(0, max_run))]


def _weave(rng: random.Random, names: list[str], sigma: int,
           max_run: int) -> Pattern:
    symbols: list[Symbol] = _run(rng, sigma, max_run)
    for name in names:
        symbols.append(Var(name))
        symbols.extend(_run(rng, sigma, max_run))
    return Pattern(tuple(symbols))


def random_pattern(cls: str, rng: random.Random, *, sigma: int = 3,
                   max_vars: int = 3, max_run: int = 2,
                   k: int = 2) -> Pattern:
    """Random pattern of the requested class, always with a variable."""
    cls = cls.lower()
    if cls == "regular":
        p = rng.randint(1, max_vars)
        return _weave(rng, [f"x{i}" for i in range(1, p + 1)], sigma, max_run)
    if cls == "1var":
        return _weave(rng, ["x"] * rng.randint(1, 3), sigma, max_run)
    if cls == "noncross":
        names: list[str] = []
        for i in range(1, rng.randint(1, max_vars) + 1):
            names.extend([f"x{i}"] * rng.randint(1, 2))
        return _weave(rng, names, sigma, max_run)
    if cls == "1rep":
        names = ["x"] * rng.randint(2, 3)
        for i in range(1, rng.randint(0, max_vars - 1) + 1):
            names.insert(rng.randint(0, len(names)), f"y{i}")
        return _weave(rng, names, sigma, max_run)
    if cls == "klocal":
        # Rejection sampling: small random weaves are nearly always
        # k-local for k >= 2, so this terminates quickly.
        while True:
            pool = [f"x{i}" for i in range(1, rng.randint(1, max_vars) + 1)]
            names = [rng.choice(pool) for _ in range(rng.randint(1, 5))]
            names.extend(n for n in pool if n not in names)
            rng.shuffle(names)
            pattern = _weave(rng, names, sigma, max_run)
            if locality(pattern)[0] <= k:
                return pattern
    raise ValueError(f"unknown pattern class {cls!r}")


def _mutate(word: Word, rng: random.Random, sigma: int) -> Word:
    if not word:
        return word
    out = list(word)
    for _ in range(rng.randint(1, 2)):
        pos = rng.randrange(len(out))
        out[pos] = rng.randint(1, sigma)
    return tuple(out)


def random_instance(cls: str, rng: random.Random, *, sigma: int = 3,
                    max_vars: int = 3, max_run: int = 2, word_len: int = 13,
                    k: int = 2, max_image: int = 2) -> Instance:
    """Random instance whose word stays within word_len letters."""
    pattern = random_pattern(cls, rng, sigma=sigma, max_vars=max_vars,
                             max_run=max_run, k=k)
    lengths = {name: rng.randint(0, max_image) for name in pattern.var_names}
    while substituted_length(pattern, lengths) > word_len:
        stretched = [n for n, l in lengths.items() if l > 0]
        if not stretched:
            break
        lengths[rng.choice(stretched)] -= 1
    images = {name: random_word(rng, l, sigma) for name, l in lengths.items()}
    exact = apply_substitution(pattern, images)
    roll = rng.random()
    if roll < 0.4:
        word = exact
    elif roll < 0.8:
        word = _mutate(exact, rng, sigma)
    else:
        n = max(0, min(word_len, len(exact) + rng.randint(-2, 2)))
        word = random_word(rng, n, sigma)
    return Instance.build(word=word, pattern=pattern, sigma=sigma)
