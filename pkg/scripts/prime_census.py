"""Census of sum-dominant subsets of the odd primes up to a bound.

Writes the full report to --out and prints a margin and size breakdown.
Resumable through --checkpoint.
"""
import argparse
import json
from collections import Counter
from pathlib import Path

from mstd import primes
from mstd.setcore import classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=109)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--checkpoint", type=Path)
    ap.add_argument("--out", type=Path, default=Path("census.json"))
    args = ap.parse_args()

    rep = primes.search_prime_mstd(primes.sieve(args.max), threads=args.threads, checkpoint=args.checkpoint)
    args.out.write_text(json.dumps(rep.to_json(), indent=1))

    print(f"pool: {len(rep.pool.primes)} primes up to {args.max}, {rep.nodes} nodes, {rep.elapsed:.1f}s")
    print(f"sum-dominant subsets: {rep.count}")
    print(f"smallest max: {[list(s) for s in rep.min_by_max]}")
    print(f"max margin: {rep.max_margin}  two excluded: {rep.two_exclusion_ok}")
    margins = Counter(classify(s).margin for s in rep.mstd_sets)
    sizes = Counter(len(s) for s in rep.mstd_sets)
    print("by margin:", dict(sorted(margins.items())))
    print("by size:  ", dict(sorted(sizes.items())))


if __name__ == "__main__":
    main()
