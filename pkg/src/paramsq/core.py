"""Strings over small integer alphabets, alphabet bijections and the
prev-encoding canonical form.

Symbols are dense ids ``0..sigma-1``.  Everything that is reported to a
user (positions, intervals) is 1-based; Python indexing on the raw
``symbols`` tuple stays 0-based.
"""
from __future__ import annotations

import itertools
import string
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Literal, Sequence

__all__ = [
    "ParseError", "DomainError", "PString", "PrevEncoding", "Bijection",
    "PartialBijection", "pstring_parse", "format_pstring", "prev_encode",
    "prev_key", "bijection_compose", "permutation_parity", "apply",
    "canonical_strings", "canonicalize", "MAX_SIGMA",
]

MAX_SIGMA = 64
LETTERS = string.ascii_lowercase


class ParseError(ValueError):
    """Raised when text cannot be read as a string of symbol ids."""


class DomainError(ValueError):
    """Raised when an argument is outside the domain of an operation."""


@dataclass(frozen=True)
class PString:
    symbols: tuple[int, ...]
    sigma: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(c) for c in self.symbols))
        if self.sigma < 0 or self.sigma > MAX_SIGMA:
            raise DomainError(f"sigma must be in 0..{MAX_SIGMA}, got {self.sigma}")
        for c in self.symbols:
            if not 0 <= c < self.sigma:
                raise DomainError(f"symbol id {c} outside alphabet of size {self.sigma}")

    @classmethod
    def of(cls, symbols: Iterable[int], sigma: int | None = None) -> PString:
        symbols = tuple(symbols)
        if sigma is None:
            sigma = max(symbols) + 1 if symbols else 0
        return cls(symbols, sigma)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def at(self, i: int) -> int:
        """Symbol at 1-based position ``i``."""
        if not 1 <= i <= len(self.symbols):
            raise DomainError(f"position {i} outside 1..{len(self.symbols)}")
        return self.symbols[i - 1]

    def sub(self, i: int, j: int) -> PString:
        """The substring ``s[i..j]`` (1-based, inclusive); empty when i > j."""
        if i > j:
            return PString((), self.sigma)
        if i < 1 or j > len(self.symbols):
            raise DomainError(f"interval [{i}, {j}] outside 1..{len(self.symbols)}")
        return PString(self.symbols[i - 1:j], self.sigma)

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(self.symbols)

    def __add__(self, other: PString) -> PString:
        return PString(self.symbols + other.symbols, max(self.sigma, other.sigma))

    def __str__(self):
        return format_pstring(self)


@dataclass(frozen=True)
class PrevEncoding:
    offsets: tuple[int, ...]

    def __len__(self):
        return len(self.offsets)


class Bijection:
    """A permutation of ``range(sigma)``; ``image[a]`` is the image of ``a``."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise DomainError(f"{image} is not a permutation")
        self.image = image

    @classmethod
    def identity(cls, sigma: int) -> Bijection:
        return cls(range(sigma))

    @classmethod
    def from_cycles(cls, sigma: int, *cycles: Sequence[int]) -> Bijection:
        image = list(range(sigma))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                image[a] = b
        return cls(image)

    @property
    def sigma(self) -> int:
        return len(self.image)

    def __call__(self, a: int) -> int:
        return self.image[a]

    def __eq__(self, other):
        return isinstance(other, Bijection) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Bijection({list(self.image)})"

    def inverse(self) -> Bijection:
        inv = [0] * len(self.image)
        for a, b in enumerate(self.image):
            inv[b] = a
        return Bijection(inv)

    def power(self, k: int) -> Bijection:
        base = self if k >= 0 else self.inverse()
        result = Bijection.identity(self.sigma)
        for _ in range(abs(k)):
            result = bijection_compose(base, result)
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            a = self.image[start]
            while a != start:
                cyc.append(a)
                seen.add(a)
                a = self.image[a]
            out.append(tuple(cyc))
        return out


class PartialBijection(Mapping):
    """An injective partial map between symbol ids."""

    __slots__ = ("_map",)

    def __init__(self, pairs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        m = dict(pairs)
        if len(set(m.values())) != len(m):
            raise DomainError(f"partial map {m} is not injective")
        self._map = m

    def __getitem__(self, a):
        return self._map[a]

    def __iter__(self):
        return iter(sorted(self._map))

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return "PartialBijection({%s})" % ", ".join(f"{a}: {self._map[a]}" for a in self)

    def __eq__(self, other):
        if isinstance(other, PartialBijection):
            return self._map == other._map
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def agrees_with(self, f: Bijection) -> bool:
        return all(f(a) == b for a, b in self._map.items())

    def completions(self, sigma: int) -> Iterator[Bijection]:
        """Every bijection on ``range(sigma)`` extending this map."""
        if any(a >= sigma or b >= sigma for a, b in self._map.items()):
            return
        free_src = [a for a in range(sigma) if a not in self._map]
        free_dst = sorted(set(range(sigma)) - set(self._map.values()))
        for dst in itertools.permutations(free_dst):
            image = [0] * sigma
            for a, b in self._map.items():
                image[a] = b
            for a, b in zip(free_src, dst):
                image[a] = b
            yield Bijection(image)

    def to_letters(self) -> dict[str, str]:
        return {_symbol_text(a): _symbol_text(b) for a, b in sorted(self._map.items())}


def _symbol_text(c: int) -> str:
    return LETTERS[c] if c < len(LETTERS) else str(c)


def pstring_parse(text: str, sigma_override: int | None = None) -> PString:
    """Read ``aabbac``, ``0,0,1`` or either form with an ``@sigma`` suffix.

    Without an explicit size the alphabet is ``0..max id``.
    """
    text = text.strip()
    declared = None
    if "@" in text:
        text, _, tail = text.rpartition("@")
        try:
            declared = int(tail)
        except ValueError:
            raise ParseError(f"bad alphabet size {tail!r}") from None
        if declared < 0:
            raise ParseError(f"bad alphabet size {tail!r}")
    if sigma_override is not None:
        declared = sigma_override
    if not text:
        symbols: tuple[int, ...] = ()
    elif "," in text or text.isdigit():
        try:
            symbols = tuple(int(tok) for tok in text.split(","))
        except ValueError:
            raise ParseError(f"non-integer token in {text!r}") from None
        if any(c < 0 for c in symbols):
            raise ParseError(f"negative symbol id in {text!r}")
    else:
        bad = [ch for ch in text if ch not in LETTERS]
        if bad:
            raise ParseError(f"character {bad[0]!r} outside a-z")
        symbols = tuple(ord(ch) - ord("a") for ch in text)
    needed = max(symbols) + 1 if symbols else 0
    if declared is None:
        declared = needed
    elif declared < needed:
        raise DomainError(f"sigma {declared} does not cover symbol id {needed - 1}")
    return PString(symbols, declared)


def format_pstring(s: PString) -> str:
    """Inverse of :func:`pstring_parse`."""
    if s.sigma <= len(LETTERS):
        body = "".join(LETTERS[c] for c in s.symbols)
    else:
        body = ",".join(map(str, s.symbols))
    needed = max(s.symbols) + 1 if s.symbols else 0
    return body if needed == s.sigma else f"{body}@{s.sigma}"


def prev_key(symbols: Sequence[int]) -> tuple[int, ...]:
    """Raw prev-encoding of a symbol sequence (0 marks a first occurrence)."""
    last: dict[int, int] = {}
    out = []
    for i, c in enumerate(symbols):
        j = last.get(c)
        out.append(0 if j is None else i - j)
        last[c] = i
    return tuple(out)


def prev_encode(s: PString) -> PrevEncoding:
    return PrevEncoding(prev_key(s.symbols))


def bijection_compose(f: Bijection, g: Bijection) -> Bijection:
    """``f ∘ g``: apply ``g`` first."""
    if f.sigma != g.sigma:
        raise DomainError(f"cannot compose bijections on {f.sigma} and {g.sigma} symbols")
    fi = f.image
    return Bijection(fi[b] for b in g.image)


def permutation_parity(f: Bijection) -> Literal["even", "odd"]:
    transpositions = sum(len(c) - 1 for c in f.cycles())
    return "odd" if transpositions % 2 else "even"


def apply(f: Bijection, s: PString) -> PString:
    if f.sigma < s.sigma:
        raise DomainError(f"bijection on {f.sigma} symbols cannot rename alphabet of size {s.sigma}")
    return PString(tuple(f.image[c] for c in s.symbols), f.sigma)


def canonicalize(s: PString) -> PString:
    """Rename symbols in order of first occurrence (restricted growth form)."""
    names: dict[int, int] = {}
    out = tuple(names.setdefault(c, len(names)) for c in s.symbols)
    return PString(out, s.sigma)


def canonical_strings(n: int, max_sigma: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n`` using at most
    ``max_sigma`` distinct ids, in lexicographic order."""
    if n == 0:
        yield ()
        return
    if max_sigma <= 0:
        return
    word = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield tuple(word)
            return
        for c in range(min(used + 1, max_sigma)):
            word[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(1, 1)
