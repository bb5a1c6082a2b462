"""Command-line surface for reproducible runs.

Exit codes: 0 success, 2 search/budget exhausted, 3 verification failed,
64 usage error.  All commands are deterministic given their flags; there
is no randomness anywhere in the core.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cubicring import PREFER_2P, PREFER_P
from .errors import BudgetExhausted, DegreeIncompatible, HasseCurvesError, VerificationFailed
from .pipeline import emit, generate_many, load, verify
from .primesearch import (
    TEMPLATE_PAPER,
    TEMPLATE_SECTION5,
    is_prime,
    search_coefficient_pairs,
    search_descent_primes,
)
from .units import (
    BACKEND_ENUMERATION,
    BACKEND_REDUCTION,
    UnitCache,
    aacm_scan,
    density_report,
    fundamental_unit,
)

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_VERIFICATION = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hassecurves", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct verified counterexample curves")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--reproduce-section5", action="store_true",
                   help="pin the worked-example templates and descent slots")
    g.add_argument("--prefer-2p", action="store_true")
    g.add_argument("--format", choices=["json", "latex", "summary"], default="summary")
    g.add_argument("--local-bound", type=int, default=1000)
    g.add_argument("--height", type=int, default=100)

    v = sub.add_parser("verify", help="re-verify a stored record")
    v.add_argument("--input", required=True)
    v.add_argument("--local-bound", type=int, default=1000)
    v.add_argument("--height", type=int, default=100)

    s = sub.add_parser("aacm-scan", help="scan primes for unit-conjecture exceptions")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1, help="shard unit computations over processes")
    s.add_argument("--cache", default=None)
    s.add_argument("--include-p3", action="store_true")

    sp = sub.add_parser("search-primes", help="coefficient-pair or descent prime search")
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--iota", type=int, required=True, choices=[1, 2])
    sp.add_argument("--count", type=int, default=3)
    sp.add_argument("--kind", choices=["pairs", "descent"], default="pairs")
    sp.add_argument("--template", choices=[TEMPLATE_PAPER, TEMPLATE_SECTION5], default=TEMPLATE_PAPER)
    sp.add_argument("--min-l", type=int, default=2)
    sp.add_argument("--radius", type=int, default=64)

    d = sub.add_parser("density", help="density bound for degrees the construction misses")
    d.add_argument("--prime-bound", type=int, required=True)

    u = sub.add_parser("unit", help="fundamental unit of Z[P^(1/3)]")
    u.add_argument("--P", type=int, required=True)
    u.add_argument("--backend", choices=[BACKEND_ENUMERATION, BACKEND_REDUCTION],
                   default=BACKEND_REDUCTION)
    u.add_argument("--cache", default=None)
    return parser


def _infer_p(P: int, p: int | None) -> int:
    if p is not None:
        return p
    if P % 2 == 0 and is_prime(P // 2):
        return P // 2
    if is_prime(P):
        return P
    raise HasseCurvesError(f"cannot infer p from P = {P}; pass --p")


def _cmd_generate(args) -> int:
    preference = PREFER_2P if args.prefer_2p else PREFER_P
    records = generate_many(
        args.p,
        args.n,
        args.count,
        preference=preference,
        reproduce_section5=args.reproduce_section5,
        local_bound=args.local_bound,
        height=args.height,
    )
    for rec in records:
        print(emit(rec, args.format))
        for note in rec.divergences:
            print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        record = load(fh.read())
    report = verify(record, local_bound=args.local_bound, height=args.height)
    print(json.dumps({"overall": report.overall, "failures": list(report.failures)}, sort_keys=True))
    return EXIT_OK if report.overall else EXIT_VERIFICATION


def _cmd_scan(args) -> int:
    cache = UnitCache(args.cache) if args.cache else None
    report = aacm_scan(args.max, include_diagnostic_p3=args.include_p3, cache=cache,
                       jobs=max(1, args.jobs))
    for r in report.exceptions:
        print(json.dumps({"p": r.p, "P": r.P, "beta_mod_p": r.beta_mod_p,
                          "equation_order_maximal": r.equation_order_maximal}, sort_keys=True))
    summary = {
        "p_max": report.p_max,
        "primes_checked": len(report.checked),
        "exceptions": len(report.exceptions),
        "skipped": [[p, P, reason] for p, P, reason in report.skipped],
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_BUDGET if report.skipped else EXIT_OK


def _cmd_search_primes(args) -> int:
    from .cubicring import FieldParams

    p = _infer_p(args.P, args.p)
    params = FieldParams(p=p, P=args.P, iota=args.iota)
    if args.kind == "pairs":
        for rec in search_coefficient_pairs(params, args.count, radius=args.radius,
                                            template_mode=args.template):
            print(json.dumps({"b": rec.b, "c": rec.c, "q": rec.q}, sort_keys=True))
    else:
        for rec in search_descent_primes(params, args.count, args.min_l, radius=args.radius):
            print(json.dumps({"a": rec.a, "c": rec.c, "l": rec.l}, sort_keys=True))
    return EXIT_OK


def _cmd_density(args) -> int:
    rep = density_report(args.prime_bound)
    print(json.dumps({
        "prime_bound": rep.prime_bound,
        "d_M": [str(rep.d_M.lo), str(rep.d_M.hi)],
        "d_M_float": float(rep.d_M.hi),
        "odd_ratio": [str(rep.odd_ratio.lo), str(rep.odd_ratio.hi)],
        "odd_ratio_float": float(rep.odd_ratio.lo),
    }, sort_keys=True))
    return EXIT_OK


def _cmd_unit(args) -> int:
    cache = UnitCache(args.cache) if args.cache else None
    unit = cache.get(args.P) if cache else None
    if unit is None:
        unit = fundamental_unit(args.P, args.backend)
        if cache:
            cache.put(unit)
    e = unit.element
    from .cubicring import norm

    print(f"{unit.P} {e.a} {e.b} {e.c} {norm(e, unit.P)} {unit.backend}")
    return EXIT_OK


def dispatch(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    handlers = {
        "generate": _cmd_generate,
        "verify": _cmd_verify,
        "aacm-scan": _cmd_scan,
        "search-primes": _cmd_search_primes,
        "density": _cmd_density,
        "unit": _cmd_unit,
    }
    try:
        return handlers[args.command](args)
    except (BudgetExhausted,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VerificationFailed,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (DegreeIncompatible, HasseCurvesError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(dispatch())


if __name__ == "__main__":
    main()
