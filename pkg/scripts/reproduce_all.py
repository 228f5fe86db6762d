"""Run every reproduction check and write a JSON summary."""
import argparse
import json
from pathlib import Path

from mstd import reproduce


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    def show(r):
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id:>2} {r.name}: {json.dumps(r.detail)[:160]}", flush=True)

    results = reproduce.run(quick=args.quick, threads=args.threads, progress=show)
    if args.out:
        args.out.write_text(json.dumps([r.to_json() for r in results], indent=2))


if __name__ == "__main__":
    main()
