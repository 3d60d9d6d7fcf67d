"""Executable statements of the periodicity lemmas.

Each ``check_*`` function evaluates one instance directly from the
definitions.  :func:`run_lemma_suite` sweeps every canonical string within
the limits (using :class:`PeriodTable` for constant-time period queries)
and then draws seeded random instances, which go through the ``check_*``
functions themselves.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .core import (
    Bijection, DomainError, PartialBijection, PString, bijection_compose,
    canonical_strings, format_pstring,
)
from .pperiod import PeriodTable, all_pperiods, is_pperiod, smallest_pperiod

log = logging.getLogger(__name__)

L3 = "L3_commuting_gcd"
L4 = "L4_prior_gcd"
L5 = "L5_prior_alphabet"
L6 = "L6_substring_alphabet"
C7 = "C7_corollary"
L8 = "L8_commute_from_agreement"
L9 = "L9_tight_gcd"
OVERLAP = "L_overlap"
EXTENSION = "L_extension"
LEMMA_IDS = (L3, L4, L5, L6, C7, L8, L9, OVERLAP, EXTENSION)

# stored counterexamples/probe examples per report; counts are always exact
MAX_EXAMPLES = 25


@dataclass
class LemmaInstance:
    lemma_id: str
    inputs: dict
    premise_holds: bool
    conclusion_holds: bool | None = None

    @property
    def falsifies(self) -> bool:
        return self.premise_holds and self.conclusion_holds is False


@dataclass
class LemmaReport:
    lemma_id: str
    instances_checked: int = 0
    premise_satisfied: int = 0
    counterexamples: list[LemmaInstance] = field(default_factory=list)
    counterexample_count: int = 0
    probes: dict = field(default_factory=dict)

    def record(self, inst: LemmaInstance):
        self.instances_checked += 1
        if inst.premise_holds:
            self.premise_satisfied += 1
            if inst.conclusion_holds is False:
                self.add_counterexample(inst)

    def add_counterexample(self, inst: LemmaInstance):
        self.counterexample_count += 1
        if len(self.counterexamples) < MAX_EXAMPLES:
            self.counterexamples.append(inst)

    def probe(self, name: str, example: dict | None = None):
        entry = self.probes.setdefault(name, {"count": 0, "examples": []})
        entry["count"] += 1
        if example is not None and len(entry["examples"]) < MAX_EXAMPLES:
            entry["examples"].append(example)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["probes"] = {k: self.probes[k] for k in sorted(self.probes)}
        return d


@dataclass(frozen=True)
class ScanLimits:
    max_n: int = 12
    max_sigma: int = 3
    max_perm_sigma: int = 5
    random_instances: int = 100_000
    random_min_n: int = 13
    random_max_n: int = 24
    random_max_sigma: int = 5

    @classmethod
    def zero(cls) -> ScanLimits:
        return cls(max_n=0, max_sigma=0, max_perm_sigma=0, random_instances=0)


def _text(s: PString | Iterable[int]) -> str:
    if not isinstance(s, PString):
        s = PString.of(s)
    return format_pstring(s)


def _interval(s: PString, s_range: tuple[int, int]) -> PString:
    i, j = s_range
    if not 1 <= i <= j <= len(s):
        raise DomainError(f"interval {s_range} is not a substring of a length-{len(s)} string")
    return s.sub(i, j)


def _check_period_arg(s: PString, *ps: int):
    for p in ps:
        if not 1 <= p <= len(s):
            raise DomainError(f"period {p} outside 1..{len(s)}")


def commuting_completions(fp: PartialBijection, gq: PartialBijection,
                          sigma: int) -> tuple[Bijection, Bijection] | None:
    """Some pair of completions of the two forced maps that commute."""
    gs = [g.image for g in gq.completions(sigma)]
    for f in fp.completions(sigma):
        fi = f.image
        for g in gs:
            if all(fi[g[a]] == g[fi[a]] for a in range(sigma)):
                return f, Bijection(g)
    return None


def check_L3(s: PString, p: int, q: int) -> LemmaInstance:
    _check_period_arg(s, p, q)
    inputs = {"s": _text(s), "p": p, "q": q}
    wp, wq = is_pperiod(s, p), is_pperiod(s, q)
    premise = wp is not None and wq is not None and p + q <= len(s)
    if premise:
        pair = commuting_completions(wp.forced, wq.forced, s.sigma)
        premise = pair is not None
        if pair:
            inputs["f"], inputs["g"] = list(pair[0].image), list(pair[1].image)
    if not premise:
        return LemmaInstance(L3, inputs, False)
    return LemmaInstance(L3, inputs, True, is_pperiod(s, math.gcd(p, q)) is not None)


def check_L4(s: PString, p: int, q: int) -> LemmaInstance:
    _check_period_arg(s, p, q)
    sig = len(s.alphabet)
    premise = (p + q + min(p, q) * (sig - 1) <= len(s)
               and is_pperiod(s, p) is not None and is_pperiod(s, q) is not None)
    inst = LemmaInstance(L4, {"s": _text(s), "p": p, "q": q}, premise)
    if premise:
        inst.conclusion_holds = is_pperiod(s, math.gcd(p, q)) is not None
    return inst


def check_L5(s: PString, s_range: tuple[int, int]) -> LemmaInstance:
    sub = _interval(s, s_range)
    sig = len(s.alphabet)
    premise = len(sub) >= smallest_pperiod(s) * (sig - 1)
    inst = LemmaInstance(L5, {"s": _text(s), "range": list(s_range)}, premise)
    if premise:
        inst.conclusion_holds = len(sub.alphabet) >= sig - 1
    return inst


def check_L6(s: PString, p: int, s_range: tuple[int, int], k: int,
             lemma_id: str = L6) -> LemmaInstance:
    sig = len(s.alphabet)
    if not 2 <= k <= sig + 1:
        raise DomainError(f"k = {k} outside 2..{sig + 1}")
    _check_period_arg(s, p)
    sub = _interval(s, s_range)
    premise = is_pperiod(s, p) is not None and len(sub) >= p * (k - 2) + 1
    inst = LemmaInstance(lemma_id, {"s": _text(s), "p": p, "range": list(s_range), "k": k}, premise)
    if premise:
        inst.conclusion_holds = len(sub.alphabet) >= k - 1
    return inst


def check_C7(s: PString, p: int, s_range: tuple[int, int]) -> LemmaInstance:
    sig = len(s.alphabet)
    if sig < 2:
        raise DomainError("the corollary needs at least two distinct symbols")
    return check_L6(s, p, s_range, sig, lemma_id=C7)


def check_L8(f: Bijection, g: Bijection, excluded: tuple[int, int]) -> LemmaInstance:
    sigma = f.sigma
    if sigma < 2 or g.sigma != sigma:
        raise DomainError("need two bijections on a common alphabet of size >= 2")
    a, b = excluded
    if a == b or not (0 <= a < sigma and 0 <= b < sigma):
        raise DomainError(f"excluded pair {excluded} must be two distinct symbols")
    fg, gf = bijection_compose(f, g), bijection_compose(g, f)
    premise = all(fg(c) == gf(c) for c in range(sigma) if c not in (a, b))
    inst = LemmaInstance(L8, {"f": list(f.image), "g": list(g.image), "excluded": [a, b]}, premise)
    if premise:
        inst.conclusion_holds = fg == gf
    return inst


def check_L9(s: PString, p: int, q: int) -> LemmaInstance:
    sig = len(s.alphabet)
    if sig < 2:
        raise DomainError("needs at least two distinct symbols")
    _check_period_arg(s, p, q)
    periods_ok = is_pperiod(s, p) is not None and is_pperiod(s, q) is not None
    premise = periods_ok and p + q + min(p, q) * (sig - 2) <= len(s)
    l4_premise = periods_ok and p + q + min(p, q) * (sig - 1) <= len(s)
    inst = LemmaInstance(L9, {"s": _text(s), "p": p, "q": q, "l4_premise": l4_premise}, premise)
    if premise:
        inst.conclusion_holds = is_pperiod(s, math.gcd(p, q)) is not None
    return inst


def check_overlap(x: PString, y: PString, z: PString, p: int) -> LemmaInstance:
    """The alphabet size in the bound is read as ``|Alp(xyz)|``; the
    alternative ``|Alp(y)|`` reading is recorded in ``inputs``."""
    if not (len(x) and len(y) and len(z)):
        raise DomainError("x, y and z must be non-empty")
    xy, yz, xyz = x + y, y + z, x + y + z
    if p < 1:
        raise DomainError(f"period {p} must be positive")
    inputs = {"x": _text(x), "y": _text(y), "z": _text(z), "p": p}
    periods_ok = (p <= len(xy) and p <= len(yz)
                  and is_pperiod(xy, p) is not None and is_pperiod(yz, p) is not None)
    premise = periods_ok and len(y) >= p * (len(xyz.alphabet) - 1) + 1
    inputs["premise_alt_y"] = periods_ok and len(y) >= p * (len(y.alphabet) - 1) + 1
    conclusion = p <= len(xyz) and is_pperiod(xyz, p) is not None
    if inputs["premise_alt_y"]:
        inputs["conclusion"] = conclusion
    return LemmaInstance(OVERLAP, inputs, premise, conclusion if premise else None)


def check_extension(t: PString, s_len: int, p: int, q: int) -> LemmaInstance:
    if not 1 <= s_len <= len(t):
        raise DomainError(f"prefix length {s_len} outside 1..{len(t)}")
    if not (1 <= p <= s_len and 1 <= q <= len(t)):
        raise DomainError(f"periods p={p}, q={q} out of range")
    s = t.sub(1, s_len)
    sig_t = len(t.alphabet)
    premise = (q % p == 0 and p * (sig_t - 2) + q + 1 <= s_len
               and is_pperiod(t, q) is not None and is_pperiod(s, p) is not None)
    inst = LemmaInstance(EXTENSION, {"t": _text(t), "s_len": s_len, "p": p, "q": q}, premise)
    if premise:
        inst.conclusion_holds = is_pperiod(t, p) is not None
    return inst


# ---------------------------------------------------------------- sweeps


def _distinct_table(w: tuple[int, ...]) -> list[list[int]]:
    """distinct[i][j]: |Alp(w[i..j])| for 1-based inclusive intervals."""
    n = len(w)
    distinct = [[0] * (n + 1) for _ in range(n + 2)]
    for i in range(1, n + 1):
        seen = set()
        for j in range(i, n + 1):
            seen.add(w[j - 1])
            distinct[i][j] = len(seen)
    return distinct


def _completion_images(forced: dict[int, int], sigma: int) -> list[tuple[int, ...]]:
    return [f.image for f in PartialBijection(forced).completions(sigma)]


def _commute(fs: list[tuple[int, ...]], gs: list[tuple[int, ...]]) -> bool:
    for f in fs:
        for g in gs:
            if all(f[g[a]] == g[f[a]] for a in range(len(f))):
                return True
    return False


class _Sweep:
    """Exhaustive sweep state; one ``visit`` per canonical string."""

    def __init__(self, reports: dict[str, LemmaReport], sigma: int):
        self.r = reports
        self.sigma = sigma

    def visit(self, w: tuple[int, ...]):
        n = len(w)
        table = PeriodTable(w)
        periods = table.periods(1, n)
        pset = set(periods)
        alpha = len(set(w))
        distinct = _distinct_table(w)
        text = _text(PString(w, self.sigma))
        self._gcd_lemmas(w, n, text, pset, alpha)
        self._alphabet_lemmas(n, text, periods, alpha, distinct)
        self._overlap(n, text, table, alpha, distinct)
        self._extension(n, text, table, alpha)

    def _gcd_lemmas(self, w, n, text, pset, alpha):
        r3, r4, r9 = self.r[L3], self.r[L4], self.r[L9]
        pairs = n * (n + 1) // 2
        r3.instances_checked += pairs
        r4.instances_checked += pairs
        if alpha >= 2:
            r9.instances_checked += pairs
        completions: dict[int, list] = {}

        def comps(p):
            if p not in completions:
                forced = {}
                for a, b in zip(w[:n - p], w[p:]):
                    forced[a] = b
                completions[p] = _completion_images(forced, self.sigma)
            return completions[p]

        periods = sorted(pset)
        for ip, p in enumerate(periods):
            for q in periods[ip:]:
                g_ok = math.gcd(p, q) in pset
                inputs = {"s": text, "p": p, "q": q}
                if p + q <= n and _commute(comps(p), comps(q)):
                    r3.premise_satisfied += 1
                    if not g_ok:
                        r3.add_counterexample(LemmaInstance(L3, inputs, True, False))
                if p + q + p * (alpha - 1) <= n:
                    r4.premise_satisfied += 1
                    if not g_ok:
                        r4.add_counterexample(LemmaInstance(L4, inputs, True, False))
                if alpha >= 2 and p + q + p * (alpha - 2) <= n:
                    r9.premise_satisfied += 1
                    l4 = p + q + p * (alpha - 1) <= n
                    if not l4:
                        r9.probe("premise_holds_l4_premise_fails", {**inputs, "conclusion": g_ok})
                        if math.gcd(p, q) < p:
                            r9.probe("premise_holds_l4_premise_fails_gcd_below_min",
                                     {**inputs, "conclusion": g_ok})
                    if not g_ok:
                        r9.add_counterexample(LemmaInstance(L9, {**inputs, "l4_premise": l4}, True, False))

    def _alphabet_lemmas(self, n, text, periods, alpha, distinct):
        intervals = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        # min_from[L]: smallest alphabet over intervals of length >= L
        by_len = [n + 1] * (n + 2)
        count_len = [0] * (n + 2)
        for i, j in intervals:
            L = j - i + 1
            count_len[L] += 1
            by_len[L] = min(by_len[L], distinct[i][j])
        min_from = [n + 1] * (n + 2)
        at_least = [0] * (n + 2)
        for L in range(n, 0, -1):
            min_from[L] = min(min_from[L + 1], by_len[L])
            at_least[L] = at_least[L + 1] + count_len[L]

        def sweep(report, lemma_id, threshold, need, inputs):
            report.instances_checked += len(intervals)
            threshold = max(threshold, 1)
            if threshold > n:
                return
            report.premise_satisfied += at_least[threshold]
            if min_from[threshold] >= need:
                return
            for i, j in intervals:
                if j - i + 1 >= threshold and distinct[i][j] < need:
                    report.add_counterexample(
                        LemmaInstance(lemma_id, {**inputs, "range": [i, j]}, True, False))

        sweep(self.r[L5], L5, periods[0] * (alpha - 1), alpha - 1, {"s": text})
        for p in periods:
            for k in range(2, alpha + 2):
                sweep(self.r[L6], L6, p * (k - 2) + 1, k - 1, {"s": text, "p": p, "k": k})
            if alpha >= 2:
                sweep(self.r[C7], C7, p * (alpha - 2) + 1, alpha - 1,
                      {"s": text, "p": p, "k": alpha})

    def _overlap(self, n, text, table, alpha, distinct):
        rep = self.r[OVERLAP]
        periodic = table.periodic
        for a in range(1, n - 1):
            for b in range(a + 1, n):
                ylen = b - a
                pmax = min(b, n - a)
                rep.instances_checked += pmax
                alpha_y = distinct[a + 1][b]
                for p in range(1, pmax + 1):
                    main = ylen >= p * (alpha - 1) + 1
                    alt = ylen >= p * (alpha_y - 1) + 1
                    if not alt:
                        break
                    if not (periodic(p, 1, b) and periodic(p, a + 1, n)):
                        continue
                    concl = periodic(p, 1, n)
                    inputs = {"s": text, "split": [a, b], "p": p}
                    if main:
                        rep.premise_satisfied += 1
                        if not concl:
                            rep.add_counterexample(LemmaInstance(OVERLAP, inputs, True, False))
                    if alt:
                        rep.probe("alt_reading_alp_y_premise_holds")
                        if not main:
                            rep.probe("alt_reading_only_premise_holds")
                        if not concl:
                            rep.probe("alt_reading_alp_y_counterexample", inputs)

    def _extension(self, n, text, table, alpha):
        rep = self.r[EXTENSION]
        periodic = table.periodic
        for s_len in range(1, n + 1):
            for p in range(1, s_len + 1):
                qs = range(p, n + 1, p)
                rep.instances_checked += len(qs)
                for q in qs:
                    if p * (alpha - 2) + q + 1 > s_len:
                        break
                    if periodic(q, 1, n) and periodic(p, 1, s_len):
                        rep.premise_satisfied += 1
                        if not periodic(p, 1, n):
                            rep.add_counterexample(LemmaInstance(
                                EXTENSION, {"t": text, "s_len": s_len, "p": p, "q": q}, True, False))


def _sweep_permutations(report: LemmaReport, max_perm_sigma: int):
    for sigma in range(2, max_perm_sigma + 1):
        perms = list(itertools.permutations(range(sigma)))
        pairs = list(itertools.combinations(range(sigma), 2))
        near_miss_found = False
        for f in perms:
            for g in perms:
                diff = {a for a in range(sigma) if f[g[a]] != g[f[a]]}
                report.instances_checked += len(pairs)
                for ex in pairs:
                    if diff <= set(ex):
                        report.premise_satisfied += 1
                        if diff:
                            report.add_counterexample(LemmaInstance(
                                L8, {"f": list(f), "g": list(g), "excluded": list(ex)}, True, False))
                if len(diff) == 3 and not near_miss_found:
                    near_miss_found = True
                    report.probe("agree_on_sigma_minus_3_not_commuting",
                                 {"sigma": sigma, "f": list(f), "g": list(g), "disagree": sorted(diff)})


# ------------------------------------------------------------ random phase


def _random_perm(rng: random.Random, sigma: int) -> list[int]:
    image = list(range(sigma))
    rng.shuffle(image)
    return image


def _planted(rng: random.Random, n: int, p: int, sigma: int,
             f: list[int] | None = None, head: list[int] | None = None) -> list[int]:
    """Length-n string with p-period p witnessed by ``f``."""
    f = f or _random_perm(rng, sigma)
    w = list(head) if head else [rng.randrange(sigma) for _ in range(p)]
    while len(w) < n:
        w.append(f[w[len(w) - p]])
    return w[:n]


def _random_instance(rng: random.Random, lemma_id: str, limits: ScanLimits) -> LemmaInstance:
    sigma = rng.randint(2, max(2, limits.random_max_sigma))
    n = rng.randint(limits.random_min_n, max(limits.random_min_n, limits.random_max_n))

    def periodic_string():
        if rng.random() < 0.2:
            return PString([rng.randrange(sigma) for _ in range(n)], sigma)
        p = rng.randint(1, max(1, n // rng.choice((2, 3, 4, 6))))
        return PString(_planted(rng, n, p, sigma), sigma)

    if lemma_id == L8:
        f = _random_perm(rng, sigma)
        if rng.random() < 0.5:
            g = list(Bijection(f).power(rng.randint(0, sigma)).image)
        else:
            g = _random_perm(rng, sigma)
        ex = tuple(rng.sample(range(sigma), 2))
        return check_L8(Bijection(f), Bijection(g), ex)
    if lemma_id in (L3, L4, L9):
        s = periodic_string()
        while lemma_id == L9 and len(s.alphabet) < 2:
            s = periodic_string()
        periods = all_pperiods(s)
        small = [p for p in periods if 2 * p <= n] or periods
        p, q = rng.choice(small), rng.choice(small)
        return {L3: check_L3, L4: check_L4, L9: check_L9}[lemma_id](s, p, q)
    if lemma_id in (L5, L6, C7):
        s = periodic_string()
        while lemma_id == C7 and len(s.alphabet) < 2:
            s = periodic_string()
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        if lemma_id == L5:
            return check_L5(s, (i, j))
        p = rng.choice(all_pperiods(s))
        if lemma_id == C7:
            return check_C7(s, p, (i, j))
        return check_L6(s, p, (i, j), rng.randint(2, len(s.alphabet) + 1))
    if lemma_id == OVERLAP:
        # xy has period p via f; yz continues y with a map agreeing with f where y forces it
        p = rng.randint(1, max(1, n // 4))
        a = rng.randint(1, n // 3)
        b = rng.randint(a + p + 1, n - 1) if a + p + 1 <= n - 1 else n - 1
        f = _random_perm(rng, sigma)
        w = _planted(rng, b, p, sigma, f=f)
        y = w[a:b]
        forced = {c: d for c, d in zip(y, y[p:])}
        g = list(rng.choice(list(PartialBijection(forced).completions(sigma)))
                 .image) if rng.random() < 0.7 else _random_perm(rng, sigma)
        w = _planted(rng, n, p, sigma, f=g, head=w)
        s = PString(w, sigma)
        return check_overlap(s.sub(1, a), s.sub(a + 1, b), s.sub(b + 1, n), p)
    if lemma_id == EXTENSION:
        p = rng.randint(1, max(1, n // 6))
        k = rng.randint(1, 3)
        q = k * p
        head = _planted(rng, q, p, sigma)
        t = PString(_planted(rng, n, q, sigma, head=head), sigma)
        s_len = rng.randint(p, n)
        return check_extension(t, s_len, p, q)
    raise ValueError(lemma_id)


# ------------------------------------------------------------------ runner


def run_lemma_suite(limits: ScanLimits | None = None, rng_seed: int = 0,
                    inject_fault: bool = False) -> list[LemmaReport]:
    """Exhaustive sweep over canonical strings, then seeded random instances.

    ``inject_fault`` flips one satisfied-premise instance into a
    counterexample, to exercise failure reporting end to end.
    """
    limits = limits or ScanLimits()
    reports = {lid: LemmaReport(lid) for lid in LEMMA_IDS}
    sweep = _Sweep(reports, limits.max_sigma)
    for n in range(1, limits.max_n + 1):
        for w in canonical_strings(n, limits.max_sigma):
            sweep.visit(w)
        log.debug("swept strings of length %d", n)
    _sweep_permutations(reports[L8], limits.max_perm_sigma)

    rng = random.Random(rng_seed)
    for idx in range(limits.random_instances):
        lemma_id = LEMMA_IDS[idx % len(LEMMA_IDS)]
        inst = _random_instance(rng, lemma_id, limits)
        reports[lemma_id].record(inst)
        if lemma_id == L9 and inst.premise_holds and not inst.inputs["l4_premise"]:
            reports[L9].probe("premise_holds_l4_premise_fails")
            p, q = inst.inputs["p"], inst.inputs["q"]
            if math.gcd(p, q) < min(p, q):
                reports[L9].probe("premise_holds_l4_premise_fails_gcd_below_min")
        if lemma_id == OVERLAP and inst.inputs["premise_alt_y"]:
            reports[OVERLAP].probe("alt_reading_alp_y_premise_holds")
            if not inst.premise_holds:
                reports[OVERLAP].probe("alt_reading_only_premise_holds")
            if not inst.inputs["conclusion"]:
                reports[OVERLAP].probe("alt_reading_alp_y_counterexample", inst.inputs)

    if inject_fault:
        rep = reports[L4]
        rep.add_counterexample(LemmaInstance(L4, {"injected": True}, True, False))
    return [reports[lid] for lid in LEMMA_IDS]


def suite_passed(reports: list[LemmaReport]) -> bool:
    return all(r.counterexample_count == 0 for r in reports)
