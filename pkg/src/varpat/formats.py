"""Parsing and serialization of instances.

Two wire forms are supported: a JSON object
``{"sigma": int, "word": [ints], "pattern": [{"t": id} | {"v": name}, ...],
"delta": int?}`` and, for the command line, an ASCII text form where word
and pattern are written with literal characters and variables appear as
``{name}``, e.g. ``ab{x}ab{x}{x}baab``.  Text glyphs are mapped to letter
ids 1..sigma by sorted order of the distinct glyphs in the instance; the
mapping is carried in an optional ``codec`` field so output can be
rendered back as text.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .core import ParseError, Pattern, Symbol, Var, Word


@dataclass(frozen=True)
class AsciiCodec:
    """Bijection between ASCII glyphs and letter ids."""

    to_id: dict[str, int]
    to_glyph: dict[int, str] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "to_glyph", {v: k for k, v in self.to_id.items()})

    @classmethod
    def from_glyphs(cls, glyphs) -> "AsciiCodec":
        distinct = sorted(set(glyphs))
        return cls({g: i + 1 for i, g in enumerate(distinct)})

    def encode_word(self, text: str) -> Word:
        try:
            return tuple(self.to_id[c] for c in text)
        except KeyError as exc:
            raise ParseError(f"glyph {exc.args[0]!r} not in codec") from None

    def decode_word(self, word: Word) -> str:
        try:
            return "".join(self.to_glyph[a] for a in word)
        except KeyError as exc:
            raise ParseError(f"letter id {exc.args[0]!r} not in codec") from None


def _split_pattern_text(text: str) -> list[str | tuple[str]]:
    """Split into terminal glyphs (str) and variable names (1-tuples)."""
    out: list[str | tuple[str]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "{":
            j = text.find("}", i + 1)
            if j < 0:
                raise ParseError("unterminated variable reference")
            name = text[i + 1:j]
            if not name or "{" in name:
                raise ParseError(f"bad variable name in {text[i:j + 1]!r}")
            out.append((name,))
            i = j + 1
        elif c == "}":
            raise ParseError("stray '}' in pattern text")
        else:
            out.append(c)
            i += 1
    return out


def parse_text_instance(pattern_text: str, word_text: str) -> tuple[Pattern, Word, AsciiCodec]:
    """Parse the ASCII text form of a pattern and a word with a shared codec."""
    pieces = _split_pattern_text(pattern_text)
    glyphs = [p for p in pieces if isinstance(p, str)]
    glyphs.extend(word_text)
    if not word_text:
        raise ParseError("word must be non-empty")
    codec = AsciiCodec.from_glyphs(glyphs)
    symbols: list[Symbol] = []
    for p in pieces:
        if isinstance(p, str):
            symbols.append(codec.to_id[p])
        else:
            symbols.append(Var(p[0]))
    if not symbols:
        raise ParseError("pattern must be non-empty")
    return Pattern(tuple(symbols)), codec.encode_word(word_text), codec


def render_pattern_text(pattern: Pattern, codec: AsciiCodec) -> str:
    parts = []
    for s in pattern.symbols:
        if isinstance(s, Var):
            parts.append("{" + s.name + "}")
        else:
            parts.append(codec.to_glyph[s])
    return "".join(parts)


@dataclass(frozen=True)
class Instance:
    """A matching instance: word, pattern, optional budget and codec."""

    word: Word
    pattern: Pattern
    sigma: int
    delta: int | None = None
    codec: AsciiCodec | None = None

    @classmethod
    def build(cls, word: Word, pattern: Pattern, delta: int | None = None,
              sigma: int | None = None, codec: AsciiCodec | None = None) -> "Instance":
        if sigma is None:
            sigma = infer_sigma(word, pattern)
        return cls(word=word, pattern=pattern, sigma=sigma, delta=delta, codec=codec)


def infer_sigma(word: Word, pattern: Pattern) -> int:
    letters = set(word)
    letters.update(s for s in pattern.symbols if isinstance(s, int))
    return max(letters, default=1)


def instance_to_json_dict(inst: Instance) -> dict:
    pat = []
    for s in inst.pattern.symbols:
        if isinstance(s, Var):
            pat.append({"v": s.name})
        else:
            pat.append({"t": s})
    out: dict = {"sigma": inst.sigma, "word": list(inst.word), "pattern": pat}
    if inst.delta is not None:
        out["delta"] = inst.delta
    if inst.codec is not None:
        out["codec"] = dict(sorted(inst.codec.to_id.items()))
    return out


def instance_from_json_dict(obj: dict) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    try:
        word_raw = obj["word"]
        pattern_raw = obj["pattern"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(word_raw, list) or not word_raw:
        raise ParseError("'word' must be a non-empty list of letter ids")
    word: list[int] = []
    for a in word_raw:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise ParseError(f"bad letter id {a!r} in word")
        word.append(a)
    if not isinstance(pattern_raw, list) or not pattern_raw:
        raise ParseError("'pattern' must be a non-empty list")
    symbols: list[Symbol] = []
    for item in pattern_raw:
        if not isinstance(item, dict) or len({"t", "v"} & item.keys()) != 1:
            raise ParseError(f"bad pattern item {item!r}")
        if "t" in item:
            t = item["t"]
            if not isinstance(t, int) or isinstance(t, bool) or t < 1:
                raise ParseError(f"bad terminal id {t!r}")
            symbols.append(t)
        else:
            v = item["v"]
            if not isinstance(v, str) or not v:
                raise ParseError(f"bad variable name {v!r}")
            symbols.append(Var(v))
    delta = obj.get("delta")
    if delta is not None and (not isinstance(delta, int) or isinstance(delta, bool) or delta < 0):
        raise ParseError(f"bad delta {obj['delta']!r}")
    sigma = obj.get("sigma")
    pattern = Pattern(tuple(symbols))
    wtuple = tuple(word)
    if sigma is None:
        sigma = infer_sigma(wtuple, pattern)
    elif not isinstance(sigma, int) or isinstance(sigma, bool) or sigma < 1:
        raise ParseError(f"bad sigma {sigma!r}")
    elif sigma < infer_sigma(wtuple, pattern):
        raise ParseError("sigma smaller than the largest letter id used")
    codec = None
    if "codec" in obj:
        raw = obj["codec"]
        if not isinstance(raw, dict):
            raise ParseError("'codec' must be an object")
        try:
            codec = AsciiCodec({str(k): int(v) for k, v in raw.items()})
        except (TypeError, ValueError):
            raise ParseError("bad codec mapping") from None
    return Instance(word=wtuple, pattern=pattern, sigma=sigma, delta=delta, codec=codec)


def loads_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return instance_from_json_dict(obj)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_json_dict(inst), sort_keys=True, separators=(",", ":"))


def instance_digest(inst: Instance) -> str:
    """Stable short digest of the canonical serialization."""
    return hashlib.sha256(dumps_instance(inst).encode()).hexdigest()[:12]
