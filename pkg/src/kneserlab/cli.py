"""kneserlab command line.

Exit codes: 0 success, 1 usage error, 2 precondition/domain error,
3 budget exhausted, 4 a proven bound was violated (with --test-mode).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import bounds as B
from .errors import BudgetError, DomainError
from .families import (
    default_D,
    make_D,
    make_E,
    make_hilton_milner,
    make_random,
    make_star,
    make_star_plus,
    make_tightness_G,
    make_W,
    make_W_prime,
)
from .fileio import dumps_family, read_family, reports_csv, reports_json
from .kneser import Family, concentration, covering_number, edge_count, is_intersecting, max_degree
from .lowint import polynomial_spread, sample_spread
from .search import Budget, find_cover_structure, min_edges, min_max_degree
from .setkit import Params, enumerate_all, lex_family

EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET, EXIT_VIOLATION = 1, 2, 3, 4

FAMILIES = ["star", "star-plus", "hm", "D", "E", "W", "Wprime", "G", "lex", "random"]
CHECKS = ["kkk", "eq55", "eq67", "eq8", "eq3", "split", "mixing", "thm3", "regime", "eq667"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _perm(text: str | None):
    if text is None:
        return None
    image = _ints(text)
    return {i: x for i, x in enumerate(image, start=1)}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _wide_ints_as_str(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 2**63 else obj
    if isinstance(obj, dict):
        return {key: _wide_ints_as_str(val) for key, val in obj.items()}
    if isinstance(obj, list):
        return [_wide_ints_as_str(val) for val in obj]
    return obj


def _dumps(obj) -> str:
    """Indented JSON with integer lists kept on one line; counts past 64 bits become strings."""
    text = json.dumps(_wide_ints_as_str(obj), indent=2)
    return re.sub(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]",
                  lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)


def _frac(x) -> str:
    return str(Fraction(x))


def build_family(args) -> Family:
    p = Params(args.n, args.k)
    head = list(range(2, p.k + 2))
    perm = _perm(args.perm)
    name = args.family
    if name == "star":
        return make_star(args.x, p, perm)
    if name == "star-plus":
        return make_star_plus(args.x, _ints(args.t) if args.t else head, p, perm)
    if name == "hm":
        return make_hilton_milner(args.x, _ints(args.f0) if args.f0 else head, p, perm)
    if name == "D":
        if args.f0 or args.fprime:
            return make_D(args.x, _ints(args.f0), _ints(args.fprime), p, perm)
        return default_D(p, perm)
    if name == "E":
        return make_E(args.i, p, perm)
    if name == "W":
        return make_W(args.l, p, perm)
    if name == "Wprime":
        return make_W_prime(args.l, args.lp, p, perm)
    if name == "G":
        return make_tightness_G(args.s, p, perm)
    if name == "lex":
        return lex_family(args.m, p)
    if name == "random":
        return make_random(args.m, p, args.seed, args.non_intersecting)
    raise DomainError(f"unknown family {name}")


def measure(f: Family) -> dict:
    out = {"n": f.n, "k": f.k, "size": len(f)}
    if len(f):
        prof = max_degree(f)
        out["d"] = prof.max
        out["d_witness"] = list(f.sets()[f.members.index(prof.witness)])
    else:
        out["d"] = 0
    out["e"] = edge_count(f)
    cover = covering_number(f)
    out["tau"] = cover.size
    out["tau_witness"] = list(cover.witness)
    for i in (1, 2):
        out[f"c{i}"] = _frac(concentration(f, i).value) if len(f) and i <= f.k else None
    out["intersecting"] = is_intersecting(f)
    return out


def _run_checks(f: Family | None, args) -> list:
    reports = []
    checks = args.checks.split(",") if args.checks else CHECKS
    unknown = set(checks) - set(CHECKS) - {"transversal"}
    if unknown:
        raise DomainError(f"unknown checks {sorted(unknown)}")
    if f is None and set(checks) - {"eq667", "transversal"}:
        raise DomainError("these checks need a family file")
    p = f.params if f is not None else Params(args.n, args.k)
    nonint = f is not None and len(f) >= 2 and not is_intersecting(f)
    for name in checks:
        if name == "kkk":
            reports.append(B.kkk_balogh_check(f))
        elif name == "eq55" and nonint and f.n > 2 * f.k:
            reports.append(B.eq55_check(f))
        elif name == "eq8" and nonint:
            reports.append(B.eq8_check(f))
        elif name == "eq3" and len(f):
            reports.append(B.eq3_check(f))
        elif name == "eq67" and len(f):
            for i in range(1, f.k):
                reports.extend(B.eq67_check(f, i))
        elif name in ("split", "mixing") and f.k >= 2:
            split = B.build_split(f)
            if name == "mixing":
                reports.append(B.mixing_check_split(split))
            elif len(split.f1) and len(split.f2):
                sides, overall = B.split_degree_bound(split)
                reports.extend([*sides, overall])
        elif name == "thm3" and len(f) and f.k >= 2:
            reports.extend(B.thm3_lower(f))
        elif name == "regime" and len(f):
            outside = [m for m in f.members if not m & 1]
            if outside:
                reports.extend(B.regime_bounds_report(f, 1, outside[0]))
        elif name == "eq667" and p.k >= 2 and p.n >= 2 * p.k:
            reports.append(B.eq667_check(p))
        elif name == "transversal" and args.sets:
            groups = [_ints(g) for g in args.sets.split("/")]
            reports.append(B.transversal_proportion_check(groups, p))
    return reports


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kneserlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="write a named family to a family file")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--x", type=int, default=1)
    c.add_argument("--t", help="extra set for star-plus, e.g. 2,3")
    c.add_argument("--f0", help="F for hm/D")
    c.add_argument("--fprime", help="F' for D")
    c.add_argument("--i", type=int, default=1)
    c.add_argument("--l", type=int, default=1)
    c.add_argument("--lp", type=int, default=1)
    c.add_argument("--s", type=int, default=2)
    c.add_argument("--m", type=int, default=0)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--non-intersecting", action="store_true")
    c.add_argument("--perm", help="image of 1..n, comma separated")
    c.add_argument("-o", "--output")

    m = sub.add_parser("measure", help="size, d, e, tau, c1, c2 of a family file")
    m.add_argument("file")

    b = sub.add_parser("bounds", help="run bound checkers")
    b.add_argument("file", nargs="?")
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--checks", help=f"comma list from {','.join(CHECKS)},transversal")
    b.add_argument("--sets", help="disjoint sets for transversal, e.g. 1,2,3/4,5,6")
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--test-mode", action="store_true")
    b.add_argument("-o", "--output")

    s = sub.add_parser("search", help="exact d(m,n,k) or minimum edge count")
    s.add_argument("--objective", choices=["max-degree", "edges"], default="max-degree")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--max-nodes", type=int)
    s.add_argument("--max-seconds", type=float, default=600.0)
    s.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("spread", help="low pairwise intersection families")
    sp.add_argument("--mode", choices=["polynomial", "monte-carlo"], default="polynomial")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--input", help="family file to thin (default: all k-sets)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--retries", type=int, default=50)
    sp.add_argument("-o", "--output")

    t = sub.add_parser("tightness", help="exact d(G_s) beside the general lower bounds")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--s", type=int, required=True)

    st = sub.add_parser("structure", help="best covers S of each size up to t")
    st.add_argument("file")
    st.add_argument("--t-max", type=int, default=2)

    g = sub.add_parser("spectral", help="second eigenvalue of KG(n,k) vs closed form")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--test-mode", action="store_true")
    return parser


def _cmd(args) -> int:
    if args.command == "construct":
        _emit(dumps_family(build_family(args)), args.output)
        return 0
    if args.command == "measure":
        f, _ = read_family(args.file)
        _emit(_dumps(measure(f)), None)
        return 0
    if args.command == "bounds":
        f = read_family(args.file)[0] if args.file else None
        if f is None and (args.n is None or args.k is None):
            raise DomainError("give a family file or --n and --k")
        reports = _run_checks(f, args)
        _emit(reports_json(reports) if args.format == "json" else reports_csv(reports), args.output)
        bad = [r for r in reports if r.assertable and not r.holds]
        if args.test_mode and bad:
            print(f"violated: {', '.join(r.name for r in bad)}", file=sys.stderr)
            return EXIT_VIOLATION
        return 0
    if args.command == "search":
        p = Params(args.n, args.k)
        budget = Budget.from_env(args.max_seconds)
        if args.max_nodes:
            budget = Budget(args.max_nodes, args.max_seconds)
        solve = min_max_degree if args.objective == "max-degree" else min_edges
        result = solve(args.m, p, budget, symmetric=args.symmetric, jobs=args.jobs)
        _emit(_dumps(result.to_json()), None)
        return 0 if result.proven_optimal else EXIT_BUDGET
    if args.command == "spread":
        if args.mode == "polynomial":
            sf = polynomial_spread(Params(args.n, args.k), args.d, args.seed)
        else:
            if args.input:
                g = read_family(args.input)[0]
            else:
                p = Params(args.n, args.k)
                g = Family(p, tuple(enumerate_all(p)))
            sf = sample_spread(g, args.c, args.seed, args.retries)
        _emit(dumps_family(sf.family, sf.meta()), args.output)
        return 0 if sf.success else EXIT_BUDGET
    if args.command == "tightness":
        report = B.tightness_report(Params(args.n, args.k), args.s)
        _emit(_dumps(report.record()), None)
        return 0
    if args.command == "structure":
        f, _ = read_family(args.file)
        rows = [{"size": c.size, "S": list(c.S), "residual": c.residual,
                 "element_counts": {str(x): v for x, v in c.element_counts.items()}}
                for c in find_cover_structure(f, args.t_max)]
        _emit(_dumps(rows), None)
        return 0
    if args.command == "spectral":
        p = Params(args.n, args.k)
        spectrum = B.kneser_spectrum(p)
        observed = float(max(abs(spectrum[1:]))) if len(spectrum) > 1 else 0.0
        closed = B.kneser_lambda(p)
        ok = abs(observed - closed) < 1e-6
        values = sorted({round(float(v), 6) for v in spectrum}, reverse=True)
        out = {"n": p.n, "k": p.k, "lambda_closed_form": closed,
               "lambda_spectrum": round(observed, 9), "eigenvalues": values, "match": ok}
        _emit(_dumps(out), None)
        return EXIT_VIOLATION if args.test_mode and not ok else 0
    return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _cmd(args)
    except DomainError as exc:
        print(f"kneserlab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetError as exc:
        print(f"kneserlab: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
