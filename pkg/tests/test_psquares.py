import itertools

import pytest
from hypothesis import given, strategies as st

from paramsq.core import Bijection, PString, apply, canonical_strings, prev_encode, pstring_parse
from paramsq.pequiv import p_equivalent_oracle
from paramsq.psquares import (
    SquareOccurrence, class_key, count_nonequiv_proper_psquares,
    count_nonequiv_psquares, enumerate_psquares, is_psquare,
    prefix_psquares_without_other_occurrence, psquare_classes_oracle,
    square_classes, square_stats,
)

from conftest import all_strings

P = pstring_parse


def letters(s):
    return "".join(chr(ord("a") + c) for c in s.symbols)


def prefixes_oracle(s):
    """Brute force over all substrings with the backtracking equivalence test."""
    n = len(s)
    out = []
    for length in range(2, n + 1, 2):
        h = length // 2
        if not p_equivalent_oracle(s.sub(1, h), s.sub(h + 1, length)):
            continue
        prefix = s.sub(1, length)
        if not any(p_equivalent_oracle(s.sub(i, i + length - 1), prefix)
                   for i in range(2, n - length + 2)):
            out.append(length)
    return out


@pytest.mark.parametrize("text, expected", [
    ("abba", True), ("aa", True), ("aabb", True), ("ab", True),
    ("", False), ("a", False), ("aab", False), ("abbb", False),
])
def test_is_psquare(text, expected):
    assert is_psquare(P(text)) is expected


def test_aabbac_squares():
    s = P("aabbac")
    occs = enumerate_psquares(s)
    assert {letters(s.sub(o.start, o.end)) for o in occs} == {"aa", "ab", "ac", "ba", "bb", "aabb", "abba"}
    assert {letters(s.sub(o.start, o.end)) for o in occs if o.is_standard} == {"aa", "bb"}
    assert count_nonequiv_psquares(s) == 4
    assert count_nonequiv_proper_psquares(s) == 3
    classes = {frozenset(letters(m) for m in c.members) for c in square_classes(s)}
    assert classes == {frozenset({"aa", "bb"}), frozenset({"ab", "ac", "ba"}),
                       frozenset({"aabb"}), frozenset({"abba"})}


def test_ab_and_aaaa():
    assert enumerate_psquares(P("ab")) == [SquareOccurrence(1, 1, False)]
    occs = enumerate_psquares(P("aaaa"))
    assert [(o.start, o.half_len) for o in occs] == [(1, 1), (1, 2), (2, 1), (3, 1)]
    assert all(o.is_standard for o in occs)


@pytest.mark.parametrize("text, ps, ps_proper", [
    ("a", 0, 0), ("", 0, 0), ("aaaa", 2, 0), ("abab", 2, 1), ("aabbac", 4, 3),
])
def test_counts(text, ps, ps_proper):
    s = P(text)
    assert count_nonequiv_psquares(s) == ps
    assert count_nonequiv_proper_psquares(s) == ps_proper
    assert psquare_classes_oracle(s) == (ps, ps_proper)


@pytest.mark.parametrize("text, expected", [
    ("aabbba", [4, 6]), ("aa", [2]), ("aaaa", [4]), ("", []), ("ab", [2]),
])
def test_prefixes(text, expected):
    s = P(text)
    assert prefixes_oracle(s) == expected
    assert prefix_psquares_without_other_occurrence(s) == expected


def test_occurrences_are_ordered_and_valid():
    for s in all_strings(7, 3):
        occs = enumerate_psquares(s)
        assert occs == sorted(occs)
        for o in occs:
            assert o.end <= len(s)
            assert is_psquare(s.sub(o.start, o.end))


def test_class_keys_are_member_encodings():
    for s in all_strings(7, 3):
        for c in square_classes(s):
            for m in c.members:
                assert prev_encode(m) == c.key.key
            for o in c.occurrences:
                assert class_key(s, o) == c.key


def test_renaming_invariance_and_bounds_exhaustive():
    perms = [Bijection(p) for p in itertools.permutations(range(3))]
    for s in all_strings(8, 3):
        ps = count_nonequiv_psquares(s)
        proper = count_nonequiv_proper_psquares(s)
        prefixes = prefix_psquares_without_other_occurrence(s)
        sigma = len(s.alphabet)
        assert proper <= ps
        assert len(prefixes) <= sigma
        if len(s):
            assert ps < sigma * len(s)
        for f in perms[1:]:
            assert count_nonequiv_psquares(apply(f, s)) == ps
        stats = square_stats(s.symbols)
        assert (stats.ps, stats.ps_proper, list(stats.prefix_lengths)) == (ps, proper, prefixes)


def test_oracle_agreement_small():
    for n in range(7):
        for w in canonical_strings(n, 3):
            s = PString(w, 3)
            assert psquare_classes_oracle(s) == (count_nonequiv_psquares(s),
                                                 count_nonequiv_proper_psquares(s))


def test_prefix_oracle_agreement_small():
    for n in range(1, 8):
        for w in canonical_strings(n, 3):
            s = PString(w, 3)
            assert prefix_psquares_without_other_occurrence(s) == prefixes_oracle(s)


@given(st.lists(st.integers(0, 4), max_size=24))
def test_fast_stats_agree(w):
    s = PString(w, 5)
    stats = square_stats(w)
    assert stats.ps == count_nonequiv_psquares(s)
    assert stats.ps_proper == count_nonequiv_proper_psquares(s)
    assert list(stats.prefix_lengths) == prefix_psquares_without_other_occurrence(s)
