"""Parameterized squares occurring in a string and their equivalence classes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import PrevEncoding, PString, format_pstring, prev_key
from .pequiv import p_equivalent_oracle
from .pperiod import PeriodTable

__all__ = [
    "SquareOccurrence", "ClassKey", "SquareClass", "is_psquare",
    "enumerate_psquares", "class_key", "square_classes",
    "count_nonequiv_psquares", "count_nonequiv_proper_psquares",
    "prefix_psquares_without_other_occurrence", "SquareStats", "square_stats",
    "psquare_classes_oracle", "describe_class",
]


@dataclass(frozen=True, order=True)
class SquareOccurrence:
    start: int
    half_len: int
    is_standard: bool

    @property
    def end(self) -> int:
        return self.start + 2 * self.half_len - 1


@dataclass(frozen=True)
class ClassKey:
    key: PrevEncoding


@dataclass
class SquareClass:
    """One equivalence class of squares, with its members as they occur in s."""
    key: ClassKey
    members: list[PString] = field(default_factory=list)
    occurrences: list[SquareOccurrence] = field(default_factory=list)

    @property
    def proper(self) -> bool:
        return any(not occ.is_standard for occ in self.occurrences)


def is_psquare(w: PString) -> bool:
    n = len(w)
    if n < 2 or n % 2:
        return False
    h = n // 2
    return prev_key(w.symbols[:h]) == prev_key(w.symbols[h:])


def enumerate_psquares(s: PString) -> list[SquareOccurrence]:
    w = s.symbols
    n = len(w)
    out = []
    for i in range(n):
        for h in range(1, (n - i) // 2 + 1):
            left, right = w[i:i + h], w[i + h:i + 2 * h]
            if prev_key(left) == prev_key(right):
                out.append(SquareOccurrence(i + 1, h, left == right))
    return out


def class_key(s: PString, occ: SquareOccurrence) -> ClassKey:
    return ClassKey(PrevEncoding(prev_key(s.symbols[occ.start - 1:occ.end])))


def square_classes(s: PString) -> list[SquareClass]:
    """Classes in order of their first occurrence."""
    classes: dict[ClassKey, SquareClass] = {}
    for occ in enumerate_psquares(s):
        key = class_key(s, occ)
        cls = classes.setdefault(key, SquareClass(key))
        member = s.sub(occ.start, occ.end)
        if member not in cls.members:
            cls.members.append(member)
        cls.occurrences.append(occ)
    return list(classes.values())


def count_nonequiv_psquares(s: PString) -> int:
    return len({class_key(s, occ) for occ in enumerate_psquares(s)})


def count_nonequiv_proper_psquares(s: PString) -> int:
    return len({class_key(s, occ) for occ in enumerate_psquares(s) if not occ.is_standard})


def prefix_psquares_without_other_occurrence(s: PString) -> list[int]:
    w = s.symbols
    n = len(w)
    out = []
    for length in range(2, n + 1, 2):
        key = prev_key(w[:length])
        h = length // 2
        if prev_key(w[:h]) != prev_key(w[h:length]):
            continue
        if all(prev_key(w[i:i + length]) != key for i in range(1, n - length + 1)):
            out.append(length)
    return out


@dataclass(frozen=True)
class SquareStats:
    ps: int
    ps_proper: int
    prefix_lengths: tuple[int, ...]


def _substring_keys(prev: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    # prev-encoding of w[i:j] from the global one: offsets reaching before i reset to 0
    return tuple(d if d <= k else 0 for k, d in enumerate(prev[i:j]))


def square_stats(symbols: Sequence[int], table: PeriodTable | None = None) -> SquareStats:
    """PS, PS' and the qualifying prefix lengths in one pass.

    Same results as the public functions above; used by the scan engine.
    """
    w = tuple(symbols)
    n = len(w)
    if table is None:
        table = PeriodTable(w)
    prev = prev_key(w)
    classes: dict[tuple[int, ...], bool] = {}
    for i in range(n):
        for h in range(1, (n - i) // 2 + 1):
            if table.periodic(h, i + 1, i + 2 * h):
                key = _substring_keys(prev, i, i + 2 * h)
                proper = w[i:i + h] != w[i + h:i + 2 * h]
                classes[key] = classes.get(key, False) or proper
    prefixes = []
    for length in range(2, n + 1, 2):
        if not table.periodic(length // 2, 1, length):
            continue
        key = prev[:length]
        if all(_substring_keys(prev, i, i + length) != key for i in range(1, n - length + 1)):
            prefixes.append(length)
    return SquareStats(len(classes), sum(classes.values()), tuple(prefixes))


def psquare_classes_oracle(s: PString) -> tuple[int, int]:
    """(PS, PS') by direct double loop over substrings, using only the
    backtracking equivalence test.  Test use only."""
    n = len(s)
    squares = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1, 2):
            h = (j - i + 1) // 2
            x, y = s.sub(i, i + h - 1), s.sub(i + h, j)
            if p_equivalent_oracle(x, y):
                squares.append((s.sub(i, j), x.symbols != y.symbols))
    reps: list[list] = []
    for sq, proper in squares:
        for rep in reps:
            if p_equivalent_oracle(rep[0], sq):
                rep[1] = rep[1] or proper
                break
        else:
            reps.append([sq, proper])
    return len(reps), sum(1 for _, proper in reps if proper)


def describe_class(cls: SquareClass) -> dict:
    return {
        "class_key": list(cls.key.key.offsets),
        "members": [format_pstring(PString.of(m.symbols)) for m in cls.members],
        "proper": cls.proper,
    }
