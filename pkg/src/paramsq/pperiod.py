"""Parameterized periods (p-periods).

``p`` is a p-period of ``s`` when ``s[1..|s|-p]`` and ``s[p+1..|s|]`` are
parameterized equivalent.  ``p = |s|`` always qualifies (both sides empty).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import DomainError, PartialBijection, PString
from .pequiv import forced_map

__all__ = [
    "PPeriodWitness", "is_pperiod", "smallest_pperiod", "all_pperiods",
    "PeriodTable",
]


@dataclass(frozen=True)
class PPeriodWitness:
    p: int
    forced: PartialBijection


def is_pperiod(s: PString, p: int) -> PPeriodWitness | None:
    n = len(s)
    if not 1 <= p <= n:
        raise DomainError(f"period {p} outside 1..{n}")
    m = forced_map(s.symbols[:n - p], s.symbols[p:])
    if m is None:
        return None
    return PPeriodWitness(p, PartialBijection(m))


def all_pperiods(s: PString) -> list[int]:
    return [p for p in range(1, len(s) + 1) if is_pperiod(s, p) is not None]


def smallest_pperiod(s: PString) -> int:
    if len(s) == 0:
        raise DomainError("the empty string has no p-period")
    for p in range(1, len(s) + 1):
        if is_pperiod(s, p) is not None:
            return p
    raise AssertionError("unreachable: |s| is always a p-period")


class PeriodTable:
    """Constant-time p-period queries for every substring of one string.

    For each ``p`` the pairs ``(w[k], w[k+p])`` are scanned once; a window of
    pairs is a valid forced map iff it holds no two conflicting pairs, and it
    suffices to track, per pair, the nearest earlier pair it conflicts with.
    ``reach[p][k]`` is the largest such conflict index over pairs ``0..k``.
    """

    def __init__(self, symbols: Sequence[int]):
        w = tuple(symbols)
        self.symbols = w
        n = len(w)
        self.n = n
        self.reach: list[list[int]] = [[]]
        for p in range(1, n + 1):
            last_src: dict[int, int] = {}
            last_dst: dict[int, int] = {}
            row = []
            worst = -1
            for k in range(n - p):
                a, b = w[k], w[k + p]
                k1 = last_src.get(a)
                if k1 is not None and w[k1 + p] != b and k1 > worst:
                    worst = k1
                k2 = last_dst.get(b)
                if k2 is not None and w[k2] != a and k2 > worst:
                    worst = k2
                last_src[a] = k
                last_dst[b] = k
                row.append(worst)
            self.reach.append(row)

    def periodic(self, p: int, i: int, j: int) -> bool:
        """Whether ``p`` is a p-period of ``s[i..j]`` (1-based, ``p <= j-i+1``)."""
        length = j - i + 1
        if not 1 <= p <= length:
            raise DomainError(f"period {p} outside 1..{length}")
        if p == length:
            return True
        return self.reach[p][j - 1 - p] < i - 1

    def periods(self, i: int, j: int) -> list[int]:
        return [p for p in range(1, j - i + 2) if self.periodic(p, i, j)]
