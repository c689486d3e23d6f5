"""Command line entry point: ``bordcalc <subcommand> ...``.

Exit status is 0 on success, 1 when a verification or computation fails and
2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import a1, asymptotics, catalog, summands, tables
from .series import NonExactDivision, Series
from .summands import SplittingError, Theory

MAX_N_LIMIT = 10**6
FORMATS = ("md", "csv", "json")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- rendering ------------------------------------------------------------

def render(theory: Theory, rows: Sequence[tables.GroupDescriptor], fmt: str) -> str:
    if fmt == "json":
        doc = {
            "theory": theory.value,
            "groups": [{"n": g.n, "rank": str(g.rank), "torsion": str(g.torsion_rank)} for g in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "t"])
        for g in rows:
            w.writerow([g.n, g.rank, g.torsion_rank])
        return buf.getvalue()
    lines = [f"pi_n M{theory.label} = Z^r x (Z/2)^t", "", "| n | r | t |", "|---:|---:|---:|"]
    lines += [f"| {g.n} | {g.rank} | {g.torsion_rank} |" for g in rows]
    return "\n".join(lines) + "\n"


def parse_rendered(text: str, fmt: str) -> list[tuple[int, int, int]]:
    """Read (n, r, t) triples back out of any rendering."""
    if fmt == "json":
        doc = json.loads(text)
        return [(g["n"], int(g["rank"]), int(g["torsion"])) for g in doc["groups"]]
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        return [tuple(int(x) for x in row) for row in rows[1:]]
    out = []
    for line in text.splitlines():
        cells = [c.strip() for c in line.strip().strip("|").split("|")]
        if len(cells) == 3 and all(c.isdigit() for c in cells):
            out.append(tuple(int(c) for c in cells))
    return out


# --- named series ---------------------------------------------------------

def series_names() -> list[str]:
    names = list(catalog.CATALOG)
    for prefix in ("R", "S", "Ktors"):
        names += [f"{prefix}_{t.value}" for t in Theory]
    return names


def named_series(name: str, n: int) -> Series:
    if name in catalog.CATALOG:
        return catalog.CATALOG[name](n)
    prefix, _, theory = name.rpartition("_")
    builders: dict[str, Callable[[Theory, int], Series]] = {
        "R": summands.em_series,
        "S": summands.torsion_series,
        "Ktors": summands.ktheory_torsion_series,
    }
    if prefix in builders and theory in {t.value for t in Theory}:
        return builders[prefix](Theory(theory), n)
    raise UsageError(f"unknown series {name!r}; known: {', '.join(series_names())}")


# --- verification suites --------------------------------------------------

def _check(results: list, label: str, fn: Callable[[], object]) -> None:
    try:
        detail = fn()
        ok = detail is None or detail is True
        results.append((label, ok, "" if ok else str(detail)))
    except (SplittingError, NonExactDivision, AssertionError, ValueError) as exc:
        results.append((label, False, f"{type(exc).__name__}: {exc}"))


def verify_suite(n_max: int, truncation: int, golden: dict | None = None, cache_dir=None) -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []

    def golden_check():
        rep = tables.verify_golden(n_max, golden, cache_dir)
        return True if rep.ok else "\n".join(rep.lines())

    _check(results, f"golden tables through n={n_max}", golden_check)
    for theory in Theory:
        def splitting(theory=theory):
            r = summands.em_series(theory, truncation)
            s = summands.torsion_series(theory, truncation)
            k = summands.ktheory_torsion_series(theory, truncation)
            if not (r.is_nonnegative() and s.is_nonnegative() and k.is_nonnegative()):
                return "negative coefficient"
            return True

        _check(results, f"{theory.label}: exact splitting, nonnegative R/S/Ktors to {truncation}", splitting)

    def ranks():
        for m in range(truncation // 4 + 1):
            a = summands.rank(Theory.SPINC, 4 * m)
            if not (a == summands.rank(Theory.SPINH, 4 * m) == summands.rank(Theory.SPINC, 4 * m + 2)):
                return f"rank coincidence fails at 4n={4 * m}"
        return True

    _check(results, "rank(Spin^c,4n) = rank(Spin^h,4n) = rank(Spin^c,4n+2)", ranks)
    return results


def margolis_suite() -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []
    for name in a1.BUILTIN_NAMES:
        m = a1.builtin(name)
        _check(results, f"{name}: A1 relations", lambda m=m: a1.validate(m) or True)
        for d in ("Q0", "Q1"):
            res = dict(a1.margolis(m, d).homology_dims)
            oracle = a1.brute_force_homology(m, d)
            _check(results, f"{name}: H(-; {d}) = {res} matches enumeration",
                   lambda res=res, oracle=oracle: res == oracle or f"enumeration gives {oracle}")
    _check(results, "H(A1; Q0) = H(A1; Q1) = 0",
           lambda: all(a1.margolis(a1.builtin("A1"), d).is_zero() for d in ("Q0", "Q1")) or "nonzero")
    _check(results, "H(F2; Q_i) = F2 in degree 0",
           lambda: all(dict(a1.margolis(a1.builtin("TrivialF2"), d).homology_dims) == {0: 1}
                       for d in ("Q0", "Q1")) or "wrong")

    def exact_sequences():
        n = 10
        h = {k: a1.hilbert(a1.builtin(k), n) for k in a1.BUILTIN_NAMES}
        from .series import shift

        if h["A1"] - Series.one(n) != shift(h["Elephant"], 1):
            return "P(A1) - 1 != t P(E)"
        quot = a1.quotient(a1.builtin("A1"), {3: [0b01]})
        if h["A1"] - a1.hilbert(quot, n) != shift(h["QuestionMark"], 3):
            return "P(A1) - P(A1/A1 Sq3) != t^3 P(question mark)"
        return True

    _check(results, "Hilbert series exact sequences", exact_sequences)
    return results


def _print_results(results, out) -> int:
    failed = 0
    for label, ok, detail in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {label}", file=out)
        if detail:
            print("       " + detail.replace("\n", "\n       "), file=out)
        failed += not ok
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if not failed else EXIT_FAIL


# --- commands -------------------------------------------------------------

def _guard(n: int, what: str) -> int:
    if n < 0 or n > MAX_N_LIMIT:
        raise UsageError(f"{what} must lie in 0..{MAX_N_LIMIT}")
    return n


def cmd_table(args, out) -> int:
    theory = Theory.parse(args.theory)
    rows = tables.table(theory, _guard(args.max_n, "--max-n"), args.cache_dir)
    out.write(render(theory, rows, args.format))
    return EXIT_OK


def cmd_group(args, out) -> int:
    theory = Theory.parse(args.theory)
    g = tables.group(theory, _guard(args.n, "-n"))
    print(g.describe(theory), file=out)
    return EXIT_OK


def cmd_series(args, out) -> int:
    top = _guard(args.max_n, "--max-n")
    trunc = max(top, args.truncation or 0)
    s = named_series(args.name, trunc)
    for k in range(top + 1):
        print(f"{k}\t{s[k]}", file=out)
    return EXIT_OK


def _load_golden(path: str | None):
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return {k: [tuple(row) for row in v] for k, v in doc.items()}


def cmd_verify(args, out) -> int:
    golden = _load_golden(args.golden)
    return _print_results(verify_suite(_guard(args.max_n, "--max-n"), args.truncation, golden, args.cache_dir), out)


def cmd_verify_margolis(args, out) -> int:
    return _print_results(margolis_suite(), out)


def _timed_table(theory: str, n_max: int, cache_dir) -> tuple[str, float, int]:
    t0 = time.perf_counter()
    rows = tables.table(theory, n_max, cache_dir)
    return theory, time.perf_counter() - t0, len(rows) - 1


def cmd_bench(args, out) -> int:
    n_max = _guard(args.max_n, "--max-n")
    t0 = time.perf_counter()
    names = [t.value for t in Theory]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_timed_table, names, [n_max] * 3, [args.cache_dir] * 3))
    else:
        results = [_timed_table(t, n_max, args.cache_dir) for t in names]
    total = time.perf_counter() - t0
    for theory, secs, top in results:
        print(f"{theory:6s} {secs:9.3f} s  (degrees 0..{top})", file=out)
    print(f"total  {total:9.3f} s  peak truncation {n_max}", file=out)
    return EXIT_OK


def cmd_asymptotics(args, out) -> int:
    tol = asymptotics.Tolerances(args.max_rel_error, args.near_n, args.far_n)
    ns = args.n or [100, tol.near_n, tol.far_n]
    for n in ns:
        _guard(n, "-n")
        if n < 1:
            raise UsageError("asymptotic estimates need n >= 1")
    print(f"{'estimator':22s} {'n':>6s} {'estimate/exact':>15s} {'rel. error':>12s}", file=out)
    failed = False
    for fn in (asymptotics.partition_report, asymptotics.ranksum_report, asymptotics.gupta_check):
        reps = [fn(n) for n in ns]
        for rep in reps:
            print(f"{rep.label:22s} {rep.n:6d} {rep.ratio:15.6f} {rep.relative_error:12.6f}", file=out)
        near, far = fn(tol.near_n), fn(tol.far_n)
        ok = near.relative_error < tol.max_relative_error and far.relative_error < near.relative_error
        print(f"  -> {'PASS' if ok else 'FAIL'}: error < {tol.max_relative_error} at n={tol.near_n}, "
              f"smaller at n={tol.far_n}", file=out)
        failed |= not ok
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bordcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def theory_arg(sp):
        sp.add_argument("--theory", required=True, choices=[t.value for t in Theory])

    sp = sub.add_parser("table", help="table of groups in degrees 0..max-n")
    theory_arg(sp)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--format", choices=FORMATS, default="md")
    sp.add_argument("--cache-dir")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("group", help="a single group")
    theory_arg(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("series", help="dump coefficients of a named series")
    sp.add_argument("name", help="one of: " + ", ".join(series_names()))
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--truncation", type=int)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("verify", help="golden tables and splitting identities")
    sp.add_argument("--max-n", type=int, default=99)
    sp.add_argument("--truncation", type=int, default=2000)
    sp.add_argument("--golden", help="JSON file {theory: [[n, r, t], ...]} replacing the built-in tables")
    sp.add_argument("--cache-dir")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("verify-margolis", help="A1-module relations and Margolis homology")
    sp.set_defaults(func=cmd_verify_margolis)

    sp = sub.add_parser("bench", help="time the three tables")
    sp.add_argument("--max-n", type=int, default=19999)
    sp.add_argument("--cache-dir")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("asymptotics", help="Hardy-Ramanujan and Gupta estimates vs exact values")
    sp.add_argument("-n", type=int, action="append")
    sp.add_argument("--max-rel-error", type=float, default=asymptotics.TOLERANCES.max_relative_error)
    sp.add_argument("--near-n", type=int, default=asymptotics.TOLERANCES.near_n)
    sp.add_argument("--far-n", type=int, default=asymptotics.TOLERANCES.far_n)
    sp.set_defaults(func=cmd_asymptotics)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"bordcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SplittingError, NonExactDivision) as exc:
        print(f"bordcalc: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
