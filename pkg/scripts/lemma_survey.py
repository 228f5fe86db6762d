"""Tabulate sets violating the |A+A| bounds in terms of the collision excess x.

Prints violation counts per diameter and the smallest-diameter examples, and
confirms that no violator is sum-dominant.
"""
import argparse
from collections import Counter

from mstd.search import check_lemma_inequalities
from mstd.setcore import naive_classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6, choices=(6, 7))
    ap.add_argument("--diameter", type=int, default=25)
    ap.add_argument("--examples", type=int, default=5)
    args = ap.parse_args()

    rep = check_lemma_inequalities(args.n, args.diameter)
    v = rep.inequality_violations
    print(f"n={args.n} D<={args.diameter}: {rep.sets_enumerated} canonical sets, {len(v)} violations")
    by_rule = Counter(r["rule"] for r in v)
    for rule, cnt in by_rule.items():
        print(f"  {rule}: {cnt}")
    by_diam = Counter(r["set"][-1] for r in v)
    print("  by diameter:", dict(sorted(by_diam.items())))
    for r in sorted(v, key=lambda r: (r["set"][-1], r["set"]))[: args.examples]:
        print(f"  {r['set']}  x={r['x']}  |A+A|={r['sum_card']}  {r['rule']}")
    assert all(naive_classify(r["set"]).margin <= 0 for r in v)
    print("no violator is sum-dominant")


if __name__ == "__main__":
    main()
