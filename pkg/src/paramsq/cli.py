"""Command line front-end.

Exit codes: 0 success, 1 a verification found a counterexample,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .core import DomainError, ParseError, PString, format_pstring, pstring_parse
from .extremal import exhaustive_bound_scan, heuristic_maximizer, lower_bound_string
from .lemma_lab import ScanLimits, run_lemma_suite, suite_passed
from .pperiod import all_pperiods, smallest_pperiod
from .psquares import (
    class_key, count_nonequiv_proper_psquares, count_nonequiv_psquares,
    describe_class, enumerate_psquares, prefix_psquares_without_other_occurrence,
    psquare_classes_oracle, square_classes,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def analyze_report(s: PString) -> dict:
    return {
        "command": "analyze",
        "input": format_pstring(s),
        "length": len(s),
        "sigma": s.sigma,
        "alphabet_size": len(s.alphabet),
        "ps": count_nonequiv_psquares(s),
        "ps_proper": count_nonequiv_proper_psquares(s),
        "smallest_pperiod": smallest_pperiod(s) if len(s) else None,
        "pperiods": all_pperiods(s),
        "classes": [describe_class(c) for c in square_classes(s)],
        "occurrences": [
            {"start": o.start, "half_len": o.half_len,
             "class_key": list(class_key(s, o).key.offsets), "is_standard": o.is_standard}
            for o in enumerate_psquares(s)
        ],
        "prefix_lengths": prefix_psquares_without_other_occurrence(s),
    }


def _plain_analyze(r: dict) -> str:
    lines = [
        f"string            {r['input']}  (n={r['length']}, sigma={r['sigma']}, |Alp|={r['alphabet_size']})",
        f"PS                {r['ps']}",
        f"PS'               {r['ps_proper']}",
        f"smallest p-period {r['smallest_pperiod']}",
        f"p-periods         {r['pperiods']}",
        "classes:",
    ]
    for c in r["classes"]:
        tag = "" if c["proper"] else "  (standard only)"
        lines.append(f"  {' ≈ '.join(c['members'])}{tag}")
    lines.append("occurrences (start, half_len, class_key, is_standard):")
    for o in r["occurrences"]:
        lines.append(f"  {o['start']:>3} {o['half_len']:>3}  {o['class_key']}  {o['is_standard']}")
    lines.append(f"square prefixes without another occurrence: {r['prefix_lengths']}")
    return "\n".join(lines)


def cmd_analyze(args) -> tuple[int, dict, str]:
    s = pstring_parse(args.string)
    r = analyze_report(s)
    return EXIT_OK, r, _plain_analyze(r)


def cmd_verify_lemmas(args) -> tuple[int, dict, str]:
    limits = ScanLimits(max_n=args.max_n, max_sigma=args.max_sigma,
                        max_perm_sigma=args.max_perm_sigma,
                        random_instances=args.random_instances)
    reports = run_lemma_suite(limits, args.seed, inject_fault=args.inject_fault)
    ok = suite_passed(reports)
    r = {
        "command": "verify-lemmas",
        "limits": {"max_n": limits.max_n, "max_sigma": limits.max_sigma,
                   "max_perm_sigma": limits.max_perm_sigma,
                   "random_instances": limits.random_instances},
        "seed": args.seed,
        "passed": ok,
        "reports": [rep.to_dict() for rep in reports],
    }
    lines = [f"{'lemma':<28}{'checked':>12}{'premise':>12}{'counterex':>11}"]
    for rep in reports:
        lines.append(f"{rep.lemma_id:<28}{rep.instances_checked:>12}"
                     f"{rep.premise_satisfied:>12}{rep.counterexample_count:>11}")
        for name, probe in sorted(rep.probes.items()):
            lines.append(f"    probe {name}: {probe['count']}")
    lines.append("PASS" if ok else "FAIL: counterexamples found")
    return (EXIT_OK if ok else EXIT_FAILED), r, "\n".join(lines)


def cmd_scan(args) -> tuple[int, dict, str]:
    if args.max_n < 1 or args.max_sigma < 1:
        raise UsageError("--max-n and --max-sigma must be positive")
    report = exhaustive_bound_scan(args.max_n, args.max_sigma)
    r = {"command": "scan", **report.to_dict()}
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "sigma", "max_ps", "witness"])
        writer.writerows(report.csv_rows())
        text = buf.getvalue().rstrip("\n")
    else:
        text = "\n".join([
            f"strings checked       {report.strings_checked}",
            f"max PS/n              {report.max_ps_ratio} ({float(report.max_ps_ratio):.4f}) at {report.max_ps_ratio_witness}",
            f"max prefix count      {report.max_prefix_count} at {report.max_prefix_count_witness}",
            f"max PS - n            {report.max_conjecture_margin} at {report.max_conjecture_margin_witness}",
            f"strings with PS >= n  {report.conjecture_counterexample_count}",
            f"bound violations      {len(report.violations)}",
        ])
    return (EXIT_OK if not report.violations else EXIT_FAILED), r, text


def cmd_lowerbound(args) -> tuple[int, dict, str]:
    if args.sigma < 2:
        raise UsageError("sigma must be at least 2")
    s = lower_bound_string(args.sigma)
    prefixes = prefix_psquares_without_other_occurrence(s)
    ok = len(prefixes) == args.sigma
    r = {"command": "lowerbound", "sigma": args.sigma, "string": format_pstring(s),
         "prefix_lengths": prefixes, "verified": ok}
    text = f"{r['string']}\nprefix lengths {prefixes}\nverified {str(ok).lower()}"
    return (EXIT_OK if ok else EXIT_FAILED), r, text


def cmd_maximize(args) -> tuple[int, dict, str]:
    if args.n < 2 or args.sigma < 1 or args.budget < 0:
        raise UsageError("need n >= 2, sigma >= 1, budget >= 0")
    s, ps = heuristic_maximizer(args.n, args.sigma, args.budget, args.seed)
    beats = ps >= args.n
    r = {"command": "maximize", "n": args.n, "sigma": args.sigma, "budget": args.budget,
         "seed": args.seed, "string": format_pstring(s), "ps": ps,
         "ratio": float(Fraction(ps, args.n)), "ps_at_least_n": beats}
    if beats:
        r["oracle_ps"] = psquare_classes_oracle(s)[0]
    text = f"{r['string']}\nPS {ps}\nPS/n {r['ratio']:.4f}"
    return EXIT_OK, r, text


def _budget(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"budget must be an integer, got {text}")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="paramsq",
        description="Parameterized squares, p-periods and checks of their bounds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="squares, classes and p-periods of one string")
    p.add_argument("string", help="e.g. aabbac, 0,0,1 or aab@4")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-lemmas", parents=[common], help="run the lemma suite")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-sigma", type=int, default=3)
    p.add_argument("--max-perm-sigma", type=int, default=5)
    p.add_argument("--random-instances", "--budget", type=_budget, default=100_000)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("scan", parents=[common], help="exhaustive scan of the PS bounds")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-sigma", type=int, default=3)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("lowerbound", parents=[common], help="the sigma-prefix construction")
    p.add_argument("sigma", type=int)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("maximize", parents=[common], help="hill-climb for strings with large PS")
    p.add_argument("n", type=int)
    p.add_argument("sigma", type=int)
    p.add_argument("--budget", type=_budget, default=100_000)
    p.set_defaults(func=cmd_maximize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.format == "csv" and args.command != "scan":
            raise UsageError("csv output is only available for scan")
        code, report, text = args.func(args)
    except (ParseError, DomainError, UsageError) as exc:
        print(f"paramsq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
