"""Command-line interface.

Human-readable results go to stdout, diagnostics and statistics to
stderr, so the output is pipeline-friendly.  Exit codes: 0 success,
1 usage error, 2 verification failure, 3 partial/incomplete results,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .census import CensusConfig, run_census
from .classify import classify_index, verify_identities, verify_structure, verify_structures_in_range
from .cyclotomic import primitive_prime_divisors
from .factoring import Budget, FactorStats, factor_mersenne
from .storage import (
    CacheError,
    FactorCache,
    Report,
    ReportKind,
    export_report,
    import_known_factors,
    load_cache,
    render_report,
    save_cache,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_PARTIAL = 3
EXIT_IO = 4

CACHE_ENV_VAR = "MERSENNE_OMEGA_CACHE"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cache_path(args) -> str | None:
    return args.cache or os.environ.get(CACHE_ENV_VAR) or None


def _open_cache(args) -> tuple[FactorCache, str | None]:
    path = _cache_path(args)
    if path and Path(path).exists():
        return load_cache(path), path
    return FactorCache(), path


def _save_cache(cache: FactorCache, path: str | None) -> None:
    if path is not None:
        save_cache(cache, path)


def _budget(args) -> Budget | None:
    rho = getattr(args, "budget_rho", None)
    if rho is None:
        return None
    return Budget(rho_iterations_max=rho)


def _print_stats(stats: FactorStats) -> None:
    print(f"rho_iterations: {stats.rho_iterations}", file=sys.stderr)
    print(f"rho_calls: {stats.rho_calls}", file=sys.stderr)
    print(f"trial_candidates: {stats.trial_candidates}", file=sys.stderr)
    print(f"cache_hits: {stats.cache_hits}", file=sys.stderr)


def _cmd_factor(args) -> int:
    cache, path = _open_cache(args)
    stats = FactorStats()
    f = factor_mersenne(args.n, _budget(args), cache, stats)
    _save_cache(cache, path)
    for p, e in f.factors:
        print(f"{p}^{e}")
    if not f.complete:
        print(f"cofactor {f.cofactor}")
    print(f"status: {f.status}", file=sys.stderr)
    if args.stats:
        _print_stats(stats)
    return EXIT_OK if f.complete else EXIT_PARTIAL


def _cmd_omega(args) -> int:
    if args.range is None and args.n is None:
        raise ValueError("give an index or --range A B")
    if args.range is not None and args.n is not None:
        raise ValueError("give either an index or --range, not both")
    lo, hi = (args.n, args.n) if args.n is not None else args.range
    if lo > hi:
        raise ValueError("range must be ascending")
    cache, path = _open_cache(args)
    budget = _budget(args)
    all_complete = True
    for n in range(lo, hi + 1):
        f = factor_mersenne(n, budget, cache)
        if f.complete:
            print(f"{n} {f.omega}")
        else:
            all_complete = False
            print(f"{n} ≥{f.omega} (partial)")
    _save_cache(cache, path)
    return EXIT_OK if all_complete else EXIT_PARTIAL


def _cmd_primitive(args) -> int:
    cache, path = _open_cache(args)
    f = factor_mersenne(args.n, _budget(args), cache)
    _save_cache(cache, path)
    if not f.complete:
        print(f"factorization of 2^{args.n} - 1 incomplete", file=sys.stderr)
        return EXIT_PARTIAL
    report = primitive_prime_divisors(args.n, f)
    print("primitive_primes:", *report.primitive_primes)
    print(f"primitive_part: {report.primitive_part}")
    return EXIT_OK


def _classification_payload(n: int, f) -> dict:
    form = classify_index(n)
    report = verify_structure(n, f)
    return {
        "n": n,
        "shape": form.shape.value,
        "min_omega": form.min_omega,
        "eligible_omega": form.eligible_sorted(),
        "omega": report.omega,
        "matched_clause": report.matched_clause.value,
        "decomposition": report.decomposition,
        "consistent": report.consistent,
        "divisor_form_checks": [
            {"q": c.q, "p": c.p, "l": c.l, "l_class": c.l_class, "passes": c.passes}
            for c in report.divisor_form_checks
        ],
    }


def _cmd_classify(args) -> int:
    cache, path = _open_cache(args)
    f = factor_mersenne(args.n, _budget(args), cache)
    _save_cache(cache, path)
    if not f.complete:
        print(f"factorization of 2^{args.n} - 1 incomplete", file=sys.stderr)
        return EXIT_PARTIAL
    payload = _classification_payload(args.n, f)
    report = Report(ReportKind.CLASSIFICATION_JSON, payload)
    if args.out:
        export_report(report, args.out)
    else:
        sys.stdout.write(render_report(report))
    return EXIT_OK


def _suite_line(s) -> str:
    verdict = "pass" if s.ok else "FAIL"
    line = f"{s.name}: {verdict} ({s.passed} passed, {s.failed} failed"
    if s.inconclusive:
        line += f", {s.inconclusive} inconclusive"
    line += ")"
    if s.first_failure:
        line += f" first failure: {s.first_failure}"
    return line


def _cmd_verify(args) -> int:
    cache, path = _open_cache(args)
    budget = _budget(args)
    identity = verify_identities(args.max, budget, cache)
    structure = verify_structures_in_range(args.max, budget, cache)
    _save_cache(cache, path)
    suites = list(identity.suites) + [structure]
    for s in suites:
        print(_suite_line(s))
    if args.out:
        payload = {
            "max_n": args.max,
            "suites": [
                {
                    "name": s.name,
                    "passed": s.passed,
                    "failed": s.failed,
                    "inconclusive": s.inconclusive,
                    "first_failure": s.first_failure,
                }
                for s in suites
            ],
        }
        export_report(Report(ReportKind.SUITE_JSON, payload), args.out)
    if any(s.failed for s in suites):
        return EXIT_VERIFY
    if any(s.inconclusive for s in suites):
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_census(args) -> int:
    config = CensusConfig(
        n_min=args.min,
        n_max=args.max,
        epsilon=args.epsilon,
        budget=_budget(args),
        cache_path=_cache_path(args),
    )
    cache, path = _open_cache(args)
    records, summary = run_census(config, cache)
    _save_cache(cache, path)
    report = Report(ReportKind.CENSUS_CSV, records)
    summary_stream = sys.stdout
    if args.out:
        export_report(report, args.out)
    else:
        sys.stdout.write(render_report(report))
        summary_stream = sys.stderr
    w = summary.uncorrected_bound_witnesses
    print(
        f"records: {summary.records_total} "
        f"(complete {summary.complete_count}, incomplete {summary.incomplete_count})",
        file=summary_stream,
    )
    print(f"lemma6_lower_fraction: {summary.lemma6_fraction}", file=summary_stream)
    print(f"lemma6_upper_fraction: {summary.lemma6_upper_fraction}", file=summary_stream)
    print(f"final_inequality_fraction: {summary.final_fraction}", file=summary_stream)
    print(
        f"deterministic_bound_violations: {len(summary.deterministic_violations)}",
        file=summary_stream,
    )
    print("uncorrected_bound_witnesses:", *w, file=summary_stream)
    print(f"note: {summary.asymptotic_note}", file=summary_stream)
    if summary.deterministic_violations:
        return EXIT_VERIFY
    if summary.incomplete_count:
        return EXIT_PARTIAL
    return EXIT_OK


def _cmd_import(args) -> int:
    path = _cache_path(args)
    if path is None:
        raise ValueError(f"--cache (or {CACHE_ENV_VAR}) is required for import")
    cache = load_cache(path) if Path(path).exists() else FactorCache()
    summary = import_known_factors(args.file, cache)
    save_cache(cache, path)
    print(f"accepted: {summary.accepted}")
    print(f"rejected: {summary.rejected_count}")
    for line_no, reason in summary.rejected:
        print(f"line {line_no}: {reason}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mersenne-omega", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cache", help=f"cache file path (default: ${CACHE_ENV_VAR})")

    p = sub.add_parser("factor", help="factor 2^n - 1")
    p.add_argument("n", type=int)
    p.add_argument("--budget-rho", type=int, help="total rho iteration budget")
    p.add_argument("--stats", action="store_true", help="work counters to stderr")
    common(p)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("omega", help="distinct prime factor counts of 2^n - 1")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    common(p)
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("primitive", help="primitive prime divisors of 2^n - 1")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=_cmd_primitive)

    p = sub.add_parser("classify", help="classification report for an index")
    p.add_argument("n", type=int)
    p.add_argument("--out", help="write JSON here instead of stdout")
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="run the identity and structure suites")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out", help="write the suite report JSON here")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("census", help="per-index census over a range")
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--out", help="write the CSV here instead of stdout")
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("import", help="merge a known-factor table into a cache")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=_cmd_import)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
