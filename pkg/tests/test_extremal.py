import itertools
from fractions import Fraction

import pytest

from paramsq.core import DomainError, PString, format_pstring
from paramsq.extremal import (
    exhaustive_bound_scan, heuristic_maximizer, lower_bound_string, verify_lower_bound,
)
from paramsq.psquares import (
    count_nonequiv_psquares, prefix_psquares_without_other_occurrence,
    psquare_classes_oracle, square_stats,
)

from test_psquares import prefixes_oracle


@pytest.mark.parametrize("sigma, text", [(2, "aabbba"), (3, "ababcbcbca")])
def test_construction(sigma, text):
    s = lower_bound_string(sigma)
    assert format_pstring(s) == text
    assert s.sigma == sigma


def test_construction_lengths():
    for sigma in range(2, 10):
        assert len(lower_bound_string(sigma)) == 4 * sigma - 2


def test_construction_rejects_small_sigma():
    with pytest.raises(DomainError):
        lower_bound_string(1)


@pytest.mark.parametrize("sigma, lengths", [(2, [4, 6]), (3, [6, 8, 10])])
def test_lower_bound_prefixes_by_oracle(sigma, lengths):
    s = lower_bound_string(sigma)
    assert prefixes_oracle(s) == lengths
    assert prefix_psquares_without_other_occurrence(s) == lengths
    assert verify_lower_bound(sigma)


def test_lower_bound_up_to_six():
    assert all(verify_lower_bound(sigma) for sigma in range(2, 7))


def test_trivial_scan():
    r = exhaustive_bound_scan(1, 1)
    assert r.strings_checked == 1
    assert r.max_ps_ratio == 0 and r.max_ps_ratio_witness == "a"
    assert r.violations == []


def test_scan_rejects_bad_limits():
    with pytest.raises(DomainError):
        exhaustive_bound_scan(0, 3)


def test_scan_sees_aabbac():
    r = exhaustive_bound_scan(6, 3)
    # aabbac is canonical and has PS = 4, so it feeds the ratio statistics
    assert square_stats((0, 0, 1, 1, 0, 2)).ps == 4
    assert r.max_ps_ratio >= Fraction(4, 6)
    assert r.cell_maxima[(6, 3)][0] >= 4
    assert r.violations == []


def test_scan_counts_restricted_growth_strings():
    # sum of Stirling numbers S(n, k), k <= 3, n <= 6
    stirling = {1: [1], 2: [1, 1], 3: [1, 3, 1], 4: [1, 7, 6], 5: [1, 15, 25], 6: [1, 31, 90]}
    r = exhaustive_bound_scan(6, 3)
    assert r.strings_checked == sum(sum(v) for v in stirling.values())


def test_canonical_scan_is_lossless():
    # maxima over all strings equal maxima over canonical strings
    r = exhaustive_bound_scan(6, 3)
    full: dict = {}
    for n in range(1, 7):
        for w in itertools.product(range(3), repeat=n):
            stats = square_stats(w)
            key = (n, len(set(w)))
            full[key] = max(full.get(key, 0), stats.ps)
            assert len(stats.prefix_lengths) <= r.max_prefix_count
    assert {k: v[0] for k, v in r.cell_maxima.items()} == full


def test_conjecture_counterexamples_are_real():
    r = exhaustive_bound_scan(8, 3)
    assert r.conjecture_counterexample_count >= 1
    for text, ps in r.conjecture_counterexamples:
        s = PString.of(ord(c) - ord("a") for c in text)
        assert psquare_classes_oracle(s)[0] == ps >= len(s)
    assert r.max_conjecture_margin == 0


def test_maximizer_budget_zero_returns_start():
    s, ps = heuristic_maximizer(10, 2, 0, rng_seed=4)
    assert len(s) == 10 and ps == count_nonequiv_psquares(s)
    s2, _ = heuristic_maximizer(10, 2, 0, rng_seed=4)
    assert s == s2


def test_maximizer_deterministic_and_consistent():
    a = heuristic_maximizer(14, 3, 600, rng_seed=9, stagnation_window=100)
    b = heuristic_maximizer(14, 3, 600, rng_seed=9, stagnation_window=100)
    assert a == b
    s, ps = a
    assert ps == psquare_classes_oracle(s)[0]
    start = heuristic_maximizer(14, 3, 0, rng_seed=9)[1]
    assert ps >= start


def test_maximizer_rejects_bad_arguments():
    with pytest.raises(DomainError):
        heuristic_maximizer(1, 2, 10)
