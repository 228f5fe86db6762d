"""Sweep the A* construction over k and report symmetry and margin."""
import argparse
import json

from mstd.families import build_nathanson_star
from mstd.setcore import classify, is_symmetric


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=12)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for k in range(1, args.kmax + 1):
        A = build_nathanson_star(k)
        c = classify(A)
        rows.append({"k": k, "n": len(A), "centre": is_symmetric(A), "sum_card": c.sum_card,
                     "diff_card": c.diff_card, "margin": c.margin})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'k':>3} {'n':>3} {'centre':>6} {'|A+A|':>6} {'|A-A|':>6} {'margin':>6}")
    for r in rows:
        print(f"{r['k']:>3} {r['n']:>3} {str(r['centre']):>6} {r['sum_card']:>6} {r['diff_card']:>6} {r['margin']:>6}")
    first = next((r["k"] for r in rows if r["margin"] > 0), None)
    print(f"first sum-dominant k: {first}")


if __name__ == "__main__":
    main()
