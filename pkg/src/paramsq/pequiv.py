"""Parameterized equivalence: two equal-length strings are equivalent when
some renaming of the alphabet turns one into the other."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import DomainError, PartialBijection, PString, prev_key

__all__ = [
    "EquivWitness", "p_equivalent", "recover_witness", "p_equivalent_oracle",
    "forced_map",
]


@dataclass(frozen=True)
class EquivWitness:
    forced: PartialBijection
    extension_count: int


def forced_map(xs: Sequence[int], ys: Sequence[int]) -> dict[int, int] | None:
    """The map ``xs[i] -> ys[i]`` if it is a well-defined injection, else None."""
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    for a, b in zip(xs, ys):
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return None
    return fwd


def p_equivalent(x: PString, y: PString) -> bool:
    return len(x) == len(y) and prev_key(x.symbols) == prev_key(y.symbols)


def recover_witness(x: PString, y: PString) -> EquivWitness | None:
    if len(x) != len(y):
        raise DomainError(f"lengths differ: {len(x)} != {len(y)}")
    m = forced_map(x.symbols, y.symbols)
    if m is None:
        return None
    sigma = max(x.sigma, y.sigma)
    return EquivWitness(PartialBijection(m), math.factorial(sigma - len(m)))


def p_equivalent_oracle(x: PString, y: PString) -> bool:
    """Definition-level check by backtracking search for a renaming.

    Deliberately slow and independent of the prev-encoding; test use only.
    """
    if len(x) != len(y):
        return False
    xs, ys = x.symbols, y.symbols
    sigma = max(x.sigma, y.sigma)
    image: dict[int, int] = {}
    used: set[int] = set()

    def search(i: int) -> bool:
        if i == len(xs):
            return True
        a = xs[i]
        if a in image:
            return image[a] == ys[i] and search(i + 1)
        for b in range(sigma):
            if b in used:
                continue
            image[a] = b
            used.add(b)
            if b == ys[i] and search(i + 1):
                return True
            del image[a]
            used.discard(b)
        return False

    return search(0)
