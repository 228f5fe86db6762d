"""Command-line entry point.

    mstd classify "{0,2,3,4,7,11,12,14}"
    mstd search verify --n 6 --diameter 36
    mstd primes search --max 73
    mstd reproduce --quick

Exit codes: 0 success, 1 usage error, 2 a checked claim was falsified.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
import warnings

from . import families, primes, reproduce, search
from .setcore import (
    DuplicateElementWarning,
    SetParseError,
    classification_json,
    normalize_affine,
    parse_set,
    to_spohn,
)

EXIT_OK, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    env = os.environ.get("MSTD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _set_arg(text: str):
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", DuplicateElementWarning)
            A = parse_set(text)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return A
    except (SetParseError, ValueError) as e:
        raise argparse.ArgumentTypeError(f"bad set literal {text!r}: {e}")


def _int_tuple(text: str):
    try:
        return tuple(int(t) for t in text.replace(" ", "").strip("(){}").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(args, command: str, params: dict, result, text_lines, csv_rows=None, elapsed=None):
    fmt = args.format
    if fmt == "json":
        env = {"command": command, "params": params, "result": result, "elapsed_ms": elapsed}
        print(json.dumps(env, indent=2))
    elif fmt == "csv":
        if csv_rows is None:
            raise UsageError(f"--format csv is not available for {command}")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        for line in text_lines:
            print(line)


def _ms(t0):
    return round((time.perf_counter() - t0) * 1000, 1)


# --- handlers -------------------------------------------------------------


def cmd_classify(args):
    t0 = time.perf_counter()
    rows = [classification_json(A) for A in args.sets]
    result = rows[0] if len(rows) == 1 else rows
    text = [f"{r['spohn']:<30} {'{'+','.join(map(str, r['set']))+'}'}  |A+A|={r['sum_card']} |A-A|={r['diff_card']} margin={r['margin']:+d} {r['verdict']}" for r in rows]
    cols = ["set", "spohn", "sum_card", "diff_card", "margin", "verdict"]
    csv_rows = [cols] + [[" ".join(map(str, r["set"])), r["spohn"], r["sum_card"], r["diff_card"], r["margin"], r["verdict"]] for r in rows]
    _emit(args, "classify", {"sets": [list(A.elements) for A in args.sets]}, result, text, csv_rows, _ms(t0))
    return EXIT_OK


def cmd_spohn(args):
    A = args.set
    g = to_spohn(A)
    result = {"set": list(A.elements), "spohn": str(g), "base": g.base, "gaps": list(g.gaps)}
    _emit(args, "spohn", {"set": list(A.elements)}, result, [f"{A.roster()} = {g}"], [["set", "spohn"], [A.roster(), str(g)]])
    return EXIT_OK


def cmd_normalize(args):
    A = args.set
    if len(A) < 2:
        raise UsageError("normalize needs at least two elements")
    N = normalize_affine(A)
    result = {"set": list(A.elements), "canonical": list(N.elements), "spohn": str(to_spohn(N))}
    _emit(args, "normalize", {"set": list(A.elements)}, result, [f"{A.roster()} -> {N.roster()} = {to_spohn(N)}"], [["set", "canonical"], [A.roster(), N.roster()]])
    return EXIT_OK


def cmd_families_verify(args):
    t0 = time.perf_counter()
    if args.id == "all":
        reps = families.verify_all_families(args.pmax, workers=args.threads)
    else:
        try:
            fid = int(args.id)
        except ValueError:
            raise UsageError(f"--id must be 1..15 or 'all', got {args.id!r}")
        if fid not in families.FAMILIES:
            raise UsageError(f"--id must be 1..15 or 'all', got {fid}")
        reps = [families.verify_family(fid, args.pmax)]
    result = [r.to_json() for r in reps]
    text = [f"{'id':>3} {'template':<28} {'instances':>9} {'max margin':>10}  violations"]
    for r in reps:
        text.append(f"S{r.id:<2} {families.FAMILIES[r.id].template_str():<28} {r.instances_checked:>9} {r.max_margin_seen:>10}  {len(r.violations)}")
    csv_rows = [["id", "instances_checked", "max_margin_seen", "violations"]] + [[r.id, r.instances_checked, r.max_margin_seen, len(r.violations)] for r in reps]
    _emit(args, "families verify", {"id": args.id, "pmax": args.pmax}, result, text, csv_rows, _ms(t0))
    return EXIT_FALSIFIED if any(r.violations for r in reps) else EXIT_OK


def cmd_families_build(args):
    A = families.build_family(args.id, d=args.d, a=args.a, b=args.b)
    return _print_set_result(args, "families build", {"id": args.id, "d": args.d, "a": args.a, "b": args.b}, A)


def cmd_families_star(args):
    A = families.build_nathanson_star(args.k)
    return _print_set_result(args, "families star", {"k": args.k}, A)


def _print_set_result(args, command, params, A):
    r = classification_json(A)
    _emit(args, command, params, r, [f"{A.roster()} = {r['spohn']}  margin={r['margin']:+d} {r['verdict']}"], [list(r), [A.roster(), r["spohn"], r["sum_card"], r["diff_card"], r["margin"], r["verdict"]]])
    return EXIT_OK


def _search_text(rep: search.SearchReport):
    lines = [f"{rep.command}: {rep.params}", f"sets enumerated: {rep.sets_enumerated}", f"sum-dominant: {len(rep.mstd_found)}"]
    lines += [f"  {s.roster()}  {to_spohn(s)}" for s in rep.mstd_found]
    if rep.max_x_seen is not None:
        lines.append(f"max x seen: {rep.max_x_seen}")
        lines.append(f"inequality violations: {len(rep.inequality_violations)}")
        for v in rep.inequality_violations[:20]:
            lines.append(f"  {v['set']}  {v['rule']}  x={v['x']} |A+A|={v['sum_card']}")
    hist = " ".join(f"{m:+d}:{c}" for m, c in rep.margin_histogram.items())
    lines.append(f"margin histogram: {hist}")
    if rep.falsified:
        lines.append("FALSIFIED: counterexample(s) above")
    lines.append(f"elapsed: {rep.elapsed:.2f}s")
    return lines


def _finish_search(args, rep: search.SearchReport):
    csv_rows = [["set", "spohn"]] + [[s.roster(), str(to_spohn(s))] for s in rep.mstd_found]
    _emit(args, rep.command, rep.params, rep.to_json(timing=False), _search_text(rep), csv_rows, round(rep.elapsed * 1000, 1))
    return EXIT_FALSIFIED if rep.falsified else EXIT_OK


def cmd_search(args):
    if args.search_cmd == "verify":
        rep = search.verify_no_mstd(args.n, args.diameter, workers=args.threads)
    elif args.search_cmd == "find":
        rep = search.find_mstd(args.n, args.diameter, workers=args.threads)
    elif args.search_cmd == "lemmas":
        rep = search.check_lemma_inequalities(args.n, args.diameter, workers=args.threads)
    elif args.search_cmd == "prop4":
        rep = search.check_prop4(args.diameter, workers=args.threads)
    else:
        rep = search.verify_ap_plus_k(args.ap_len, args.added, args.range, step=args.step)
    return _finish_search(args, rep)


def cmd_primes_search(args):
    pool = primes.sieve(args.max, include_two=args.include_two)
    min_card = 1 if args.no_min_card else args.min_card
    rep = primes.search_prime_mstd(pool, min_card=min_card, threads=args.threads, checkpoint=args.checkpoint, override=args.override)
    if args.list:
        for s in rep.mstd_sets:
            print(s.roster())
        return EXIT_OK
    text = [
        f"pool: {len(pool.primes)} primes up to {args.max}",
        f"subsets walked: {rep.nodes}",
        f"sum-dominant subsets: {rep.count}",
        f"max margin: {rep.max_margin}",
        "smallest by max element:",
    ]
    text += [f"  {s.roster()}" for s in rep.min_by_max]
    text.append(f"unique: {rep.unique_min}")
    if rep.two_exclusion_ok is not None:
        text.append(f"exclusion of 2 holds: {rep.two_exclusion_ok}")
    text.append(f"elapsed: {rep.elapsed:.2f}s")
    csv_rows = [["set"]] + [[s.roster()] for s in rep.mstd_sets]
    params = {"max": args.max, "min_card": min_card, "include_two": args.include_two}
    _emit(args, "primes search", params, rep.to_json(timing=False), text, csv_rows, round(rep.elapsed * 1000, 1))
    return EXIT_OK


def cmd_primes_admissible(args):
    t = primes.TupleSpec(args.tuple)
    ok = primes.is_admissible(t)
    _emit(args, "primes admissible", {"tuple": list(t.offsets)}, {"admissible": ok}, [f"{t.offsets}: {'admissible' if ok else 'not admissible'}"], [["admissible"], [ok]])
    return EXIT_OK


def cmd_primes_match(args):
    t = primes.TupleSpec(args.tuple)
    n = primes.find_match(t, args.nmax)
    res = {"match": n, "primes": [b + n for b in t.offsets] if n is not None else None}
    line = f"smallest match in [1,{args.nmax}]: {n}" + (f" -> {res['primes']}" if n is not None else "")
    _emit(args, "primes match", {"tuple": list(t.offsets), "nmax": args.nmax}, res, [line], [["match"], [n]])
    return EXIT_OK


def cmd_primes_exclusion(args):
    with open(args.source) as fh:
        data = json.load(fh)
    if "result" in data and "command" in data:
        data = data["result"]
    rep = primes.PrimeSearchReport.from_json(data)
    bad = []
    ok = primes.check_two_exclusion(rep, bad)
    res = {"sets": rep.count, "max_margin": rep.max_margin, "two_exclusion_ok": ok, "failures": bad}
    text = [f"sets checked: {rep.count}", f"max margin: {rep.max_margin}", f"exclusion of 2 holds: {ok}"]
    text += [f"  FAIL {b}" for b in bad[:20]]
    _emit(args, "primes verify-exclusion", {"from": args.source}, res, text, [["ok"], [ok]])
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_reproduce(args):
    def progress(r):
        if args.format == "text":
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id:>2}. {r.name}", flush=True)
            if not r.passed:
                print(f"       {json.dumps(r.detail)[:400]}", flush=True)

    results = reproduce.run(quick=args.quick, threads=args.threads, seed=args.seed, only=args.only, progress=progress)
    failed = [r.id for r in results if not r.passed]
    if args.format == "json":
        env = {
            "command": "reproduce",
            "params": {"quick": args.quick, "seed": args.seed, "only": args.only},
            "result": [r.to_json() for r in results],
            "elapsed_ms": None,  # kept out so the output is reproducible byte for byte
        }
        print(json.dumps(env, indent=2))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["id", "name", "passed"])
        w.writerows([[r.id, r.name, r.passed] for r in results])
    else:
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FALSIFIED if failed else EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--threads", type=int, default=_default_threads(), help="worker count (default $MSTD_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="mstd", description="Sum-dominant set toolkit")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify one or more sets")
    c.add_argument("sets", nargs="+", type=_set_arg, metavar="SET")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("spohn", parents=[common], help="print the gap (Spohn) form of a set")
    c.add_argument("set", type=_set_arg)
    c.set_defaults(func=cmd_spohn)

    c = sub.add_parser("normalize", parents=[common], help="canonical affine representative")
    c.add_argument("set", type=_set_arg)
    c.set_defaults(func=cmd_normalize)

    f = sub.add_parser("families", help="six-element parametric families")
    fsub = f.add_subparsers(dest="families_cmd", required=True, parser_class=_Parser)
    c = fsub.add_parser("verify", parents=[common])
    c.add_argument("--id", default="all", help="1..15 or all")
    c.add_argument("--pmax", type=int, default=20)
    c.set_defaults(func=cmd_families_verify)
    c = fsub.add_parser("build", parents=[common])
    c.add_argument("--id", type=int, required=True, choices=range(1, 16), metavar="1..15")
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--a", type=int, default=1)
    c.add_argument("--b", type=int, default=1)
    c.set_defaults(func=cmd_families_build)
    c = fsub.add_parser("star", parents=[common], help="{0,2} u {3,7,...,4k-1} u {4k,4k+2}")
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_families_star)

    s = sub.add_parser("search", help="exhaustive bounded-diameter enumeration")
    ssub = s.add_subparsers(dest="search_cmd", required=True, parser_class=_Parser)
    for name, need_n, default_n in (("verify", True, 6), ("find", True, 8), ("lemmas", True, 6), ("prop4", False, 6)):
        c = ssub.add_parser(name, parents=[common])
        if need_n:
            c.add_argument("--n", type=int, default=default_n)
        c.add_argument("--diameter", type=int, required=True)
        c.set_defaults(func=cmd_search)
    c = ssub.add_parser("ap-plus", parents=[common])
    c.add_argument("--ap-len", type=int, required=True)
    c.add_argument("--added", type=int, required=True, choices=(1, 2, 3, 4))
    c.add_argument("--range", type=int, required=True)
    c.add_argument("--step", type=int, default=1)
    c.set_defaults(func=cmd_search)

    pr = sub.add_parser("primes", help="sum-dominant sets of primes")
    psub = pr.add_subparsers(dest="primes_cmd", required=True, parser_class=_Parser)
    c = psub.add_parser("search", parents=[common])
    c.add_argument("--max", type=int, required=True)
    c.add_argument("--list", action="store_true", help="print every set, one per line")
    c.add_argument("--checkpoint", metavar="FILE")
    c.add_argument("--min-card", type=int, default=8)
    c.add_argument("--no-min-card", action="store_true", help="report sets of every size")
    c.add_argument("--include-two", action="store_true")
    c.add_argument("--override", action="store_true", help="allow pools above 40 primes")
    c.set_defaults(func=cmd_primes_search)
    c = psub.add_parser("admissible", parents=[common])
    c.add_argument("--tuple", type=_int_tuple, required=True)
    c.set_defaults(func=cmd_primes_admissible)
    c = psub.add_parser("match", parents=[common])
    c.add_argument("--tuple", type=_int_tuple, required=True)
    c.add_argument("--nmax", type=int, default=500)
    c.set_defaults(func=cmd_primes_match)
    c = psub.add_parser("verify-exclusion", parents=[common])
    c.add_argument("--from", dest="source", required=True, metavar="REPORT")
    c.set_defaults(func=cmd_primes_exclusion)

    c = sub.add_parser("reproduce", parents=[common], help="run the claim checks and print a pass/fail table")
    c.add_argument("--quick", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--only", type=int, nargs="+", metavar="ID")
    c.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"mstd: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
