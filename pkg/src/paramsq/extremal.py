"""Extremal behaviour of PS(s): the lower-bound construction for
square prefixes, exhaustive bound scans and a hill-climbing maximizer."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import DomainError, PString, canonical_strings, format_pstring
from .psquares import count_nonequiv_psquares, prefix_psquares_without_other_occurrence, square_stats

__all__ = [
    "lower_bound_string", "verify_lower_bound", "ScanReport",
    "exhaustive_bound_scan", "heuristic_maximizer",
]

log = logging.getLogger(__name__)

THEOREM1 = "theorem1_PS_lt_sigma_n"
THEOREM5 = "theorem5_prefix_count_le_sigma"
MAX_LISTED = 50


def lower_bound_string(sigma: int) -> PString:
    """``(c1..c_{σ-1})^2 c_σ (c2..c_σ)^2 c1`` over ids ``c_i = i - 1``."""
    if sigma < 2:
        raise DomainError(f"the construction needs sigma >= 2, got {sigma}")
    head = list(range(sigma - 1))
    tail = list(range(1, sigma))
    return PString(tuple(head * 2 + [sigma - 1] + tail * 2 + [0]), sigma)


def verify_lower_bound(sigma: int) -> bool:
    s = lower_bound_string(sigma)
    return len(prefix_psquares_without_other_occurrence(s)) == sigma


@dataclass
class ScanReport:
    """Outcome of a bound scan.

    ``violations`` lists failures of the two proved bounds (PS < σn, at most
    σ qualifying square prefixes).  Strings with PS(s) >= n are counted
    separately: that bound is only conjectured, and it does fail in range.
    """
    max_n: int
    max_sigma: int
    strings_checked: int = 0
    max_ps_ratio: Fraction = Fraction(0)
    max_ps_ratio_witness: str | None = None
    max_prefix_count: int = 0
    max_prefix_count_witness: str | None = None
    max_conjecture_margin: int | None = None
    max_conjecture_margin_witness: str | None = None
    violations: list[tuple[str, str]] = field(default_factory=list)
    conjecture_counterexample_count: int = 0
    conjecture_counterexamples: list[tuple[str, int]] = field(default_factory=list)
    # (n, |Alp(s)|) -> (max PS, shortlex-least witness)
    cell_maxima: dict[tuple[int, int], tuple[int, str]] = field(default_factory=dict)

    @property
    def conjecture_holds_in_range(self) -> bool:
        return self.conjecture_counterexample_count == 0

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "max_sigma": self.max_sigma,
            "strings_checked": self.strings_checked,
            "max_ps_ratio": {"value": float(self.max_ps_ratio),
                             "fraction": str(self.max_ps_ratio),
                             "witness": self.max_ps_ratio_witness},
            "max_prefix_count": {"value": self.max_prefix_count,
                                 "witness": self.max_prefix_count_witness},
            "max_conjecture_margin": {"value": self.max_conjecture_margin,
                                      "witness": self.max_conjecture_margin_witness},
            "conjecture_holds_in_range": self.conjecture_holds_in_range,
            "conjecture_counterexample_count": self.conjecture_counterexample_count,
            "conjecture_counterexamples": [{"string": s, "ps": ps}
                                           for s, ps in self.conjecture_counterexamples],
            "violations": [{"string": s, "bound": b} for s, b in self.violations],
            "cell_maxima": [{"n": n, "sigma": sig, "max_ps": ps, "witness": w}
                            for (n, sig), (ps, w) in sorted(self.cell_maxima.items())],
        }

    def csv_rows(self) -> list[tuple[int, int, int, str]]:
        return [(n, sig, ps, w) for (n, sig), (ps, w) in sorted(self.cell_maxima.items())]


def exhaustive_bound_scan(max_n: int, max_sigma: int) -> ScanReport:
    """Every canonical string with 1 <= |s| <= max_n and at most max_sigma
    distinct symbols, in shortlex order."""
    if max_n < 1 or max_sigma < 1:
        raise DomainError("max_n and max_sigma must be positive")
    report = ScanReport(max_n, max_sigma)
    for n in range(1, max_n + 1):
        for w in canonical_strings(n, max_sigma):
            _scan_one(report, w)
        log.debug("scanned length %d (%d strings so far)", n, report.strings_checked)
    return report


def _scan_one(report: ScanReport, w: tuple[int, ...]):
    n = len(w)
    sig = max(w) + 1  # canonical: ids are exactly 0..|Alp|-1
    stats = square_stats(w)
    ps = stats.ps
    prefixes = len(stats.prefix_lengths)
    report.strings_checked += 1
    text = None

    def name():
        nonlocal text
        if text is None:
            text = format_pstring(PString(w, sig))
        return text

    if ps >= sig * n:
        report.violations.append((name(), THEOREM1))
    if prefixes > sig:
        report.violations.append((name(), THEOREM5))
    if ps >= n:
        report.conjecture_counterexample_count += 1
        if len(report.conjecture_counterexamples) < MAX_LISTED:
            report.conjecture_counterexamples.append((name(), ps))
    ratio = Fraction(ps, n)
    if report.max_ps_ratio_witness is None or ratio > report.max_ps_ratio:
        report.max_ps_ratio, report.max_ps_ratio_witness = ratio, name()
    if report.max_prefix_count_witness is None or prefixes > report.max_prefix_count:
        report.max_prefix_count, report.max_prefix_count_witness = prefixes, name()
    margin = ps - n
    if report.max_conjecture_margin is None or margin > report.max_conjecture_margin:
        report.max_conjecture_margin, report.max_conjecture_margin_witness = margin, name()
    cell = report.cell_maxima.get((n, sig))
    if cell is None or ps > cell[0]:
        report.cell_maxima[(n, sig)] = (ps, name())


def heuristic_maximizer(n: int, sigma: int, budget: int, rng_seed: int = 0,
                        stagnation_window: int = 2000) -> tuple[PString, int]:
    """Hill climbing on PS(s) with single-position mutations.

    Moves that do not lower PS are accepted, so the walk can cross plateaus;
    after ``stagnation_window`` steps without a strict improvement it
    restarts from a fresh random string.  ``budget`` counts evaluated moves.
    """
    if n < 2 or sigma < 1:
        raise DomainError("need n >= 2 and sigma >= 1")
    rng = random.Random(rng_seed)

    def fresh():
        return [rng.randrange(sigma) for _ in range(n)]

    current = fresh()
    current_ps = square_stats(current).ps
    best, best_ps = list(current), current_ps
    since_improvement = 0
    for _ in range(budget):
        if sigma == 1:
            break
        if since_improvement >= stagnation_window:
            current = fresh()
            current_ps = square_stats(current).ps
            since_improvement = 0
        pos = rng.randrange(n)
        old = current[pos]
        current[pos] = (old + rng.randrange(1, sigma)) % sigma
        ps = square_stats(current).ps
        if ps >= current_ps:
            since_improvement = 0 if ps > current_ps else since_improvement + 1
            current_ps = ps
            if ps > best_ps:
                best, best_ps = list(current), ps
        else:
            current[pos] = old
            since_improvement += 1
    s = PString(tuple(best), sigma)
    ps = count_nonequiv_psquares(s)
    if ps != best_ps:
        raise AssertionError(f"fast PS {best_ps} disagrees with recomputation {ps} on {s}")
    return s, ps
