"""Sum-dominant sets of primes: exhaustive subset census, the exclusion-of-2
check, admissible tuples and matching integers."""

from __future__ import annotations

import json
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from ._census import subset_census
from .setcore import FiniteSet, classify, diff_card, sum_card

log = logging.getLogger(__name__)

MAX_POOL = 40


def primes_upto(N: int) -> list[int]:
    if N < 2:
        return []
    flags = bytearray([1]) * (N + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(N) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, N + 1, p)))
    return [i for i, f in enumerate(flags) if f]


@dataclass(frozen=True)
class PrimePool:
    limit: int
    primes: tuple[int, ...]
    include_two: bool = False

    def to_json(self) -> dict:
        return {"limit": self.limit, "include_two": self.include_two, "primes": list(self.primes)}


def sieve(N: int, include_two: bool = False) -> PrimePool:
    if N < 2:
        raise ValueError("N must be >= 2")
    ps = primes_upto(N)
    if not include_two:
        ps = [p for p in ps if p != 2]
    return PrimePool(N, tuple(ps), include_two)


@dataclass
class PrimeSearchReport:
    pool: PrimePool
    min_card: int
    mstd_sets: list = field(default_factory=list)
    count: int = 0
    min_by_max: list = field(default_factory=list)
    unique_min: bool = False
    max_margin: Optional[int] = None
    two_exclusion_ok: Optional[bool] = None
    nodes: int = 0
    checkpoint: Optional[dict] = None
    elapsed: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "pool": self.pool.to_json(),
            "min_card": self.min_card,
            "count": self.count,
            "min_by_max": [list(s.elements) for s in self.min_by_max],
            "unique_min": self.unique_min,
            "max_margin": self.max_margin,
            "two_exclusion_ok": self.two_exclusion_ok,
            "nodes": self.nodes,
            "mstd_sets": [list(s.elements) for s in self.mstd_sets],
        }
        if self.checkpoint is not None:
            out["checkpoint"] = self.checkpoint
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "PrimeSearchReport":
        p = d["pool"]
        rep = cls(PrimePool(p["limit"], tuple(p["primes"]), p.get("include_two", False)), d.get("min_card", 8))
        rep.mstd_sets = [FiniteSet(tuple(s)) for s in d["mstd_sets"]]
        rep.count = d["count"]
        rep.nodes = d.get("nodes", 0)
        _summarize(rep)
        return rep


def _summarize(rep: PrimeSearchReport) -> None:
    sets = rep.mstd_sets
    if not sets:
        rep.min_by_max, rep.unique_min, rep.max_margin = [], False, None
        return
    top = min(s.max for s in sets)
    rep.min_by_max = [s for s in sets if s.max == top]
    rep.unique_min = len(rep.min_by_max) == 1
    rep.max_margin = max(classify(s).margin for s in sets)


def _masks_to_sets(vals, masks) -> list[FiniteSet]:
    return [FiniteSet(tuple(int(v) for i, v in enumerate(vals) if (m >> i) & 1)) for m in masks]


def _run_prefix(vals: np.ndarray, depth: int, prefix: int, min_card: int) -> tuple[list[int], int]:
    cap = 1 << 12
    while True:
        buf = np.zeros(cap, np.int64)
        found, nodes, _ = subset_census(vals, depth, prefix, min_card, buf, 0, np.zeros((1, 3), np.int64))
        if found <= cap:
            return [int(m) for m in buf[:found]], int(nodes)
        cap = 1 << int(found).bit_length()


def _prefix_depth(P: int, threads: int) -> int:
    # enough tasks for load balance and frequent checkpoints, never more than P
    return min(P, max(4, (4 * threads - 1).bit_length()))


def search_prime_mstd(
    pool: PrimePool,
    min_card: int = 8,
    threads: int = 1,
    checkpoint: Optional[os.PathLike] = None,
    override: bool = False,
    max_tasks: Optional[int] = None,
) -> PrimeSearchReport:
    """Find every sum-dominant subset of ``pool``.

    The walk is split on the include/exclude choices for the first few pool
    indices; each prefix is an independent task. Subsets smaller than
    ``min_card`` are still walked, only not reported. With ``checkpoint``,
    finished prefixes are flushed to a JSON file after each task and skipped
    on the next run. ``max_tasks`` stops after that many new tasks (used to
    exercise resume).
    """
    P = len(pool.primes)
    if P > MAX_POOL and not override:
        raise ValueError(f"pool of {P} primes means 2**{P} ~ {2.0**P:.2e} subsets; pass override=True to run anyway")
    if P > 62:
        raise ValueError("pools beyond 62 primes do not fit the 64-bit subset masks")
    t0 = time.perf_counter()
    vals = np.asarray(pool.primes, dtype=np.int64)
    depth = _prefix_depth(P, threads)
    prefixes = list(range(1 << depth))

    done: dict[int, tuple[list[int], int]] = {}
    ck_path = Path(checkpoint) if checkpoint else None
    resumed = 0
    if ck_path is not None and ck_path.exists():
        state = json.loads(ck_path.read_text())
        if state["pool"] != list(pool.primes) or state["min_card"] != min_card or state["prefix_depth"] != depth:
            raise ValueError(f"checkpoint {ck_path} was written for a different search")
        for k, v in state["done"].items():
            done[int(k)] = (v["found"], v["nodes"])
        resumed = len(done)
        log.info("resuming from %s: %d/%d prefixes done", ck_path, resumed, len(prefixes))

    def flush():
        if ck_path is None:
            return
        state = {
            "pool": list(pool.primes),
            "min_card": min_card,
            "prefix_depth": depth,
            "done": {str(k): {"found": f, "nodes": n} for k, (f, n) in sorted(done.items())},
        }
        tmp = ck_path.with_suffix(ck_path.suffix + ".tmp")
        tmp.write_text(json.dumps(state))
        tmp.replace(ck_path)

    todo = [p for p in prefixes if p not in done]
    if max_tasks is not None:
        todo = todo[:max_tasks]
    if threads <= 1:
        for p in todo:
            done[p] = _run_prefix(vals, depth, p, min_card)
            flush()
    else:
        with ThreadPoolExecutor(threads) as ex:
            futs = {p: ex.submit(_run_prefix, vals, depth, p, min_card) for p in todo}
            for p in todo:
                done[p] = futs[p].result()
                flush()

    rep = PrimeSearchReport(pool, min_card)
    masks = sorted(m for f, _ in done.values() for m in f)
    rep.nodes = sum(n for _, n in done.values())
    rep.mstd_sets = sorted(_masks_to_sets(pool.primes, masks))
    rep.count = len(rep.mstd_sets)
    complete = len(done) == len(prefixes)
    if ck_path is not None or not complete:
        rep.checkpoint = {
            "path": str(ck_path) if ck_path else None,
            "prefixes_total": len(prefixes),
            "prefixes_done": len(done),
            "prefixes_resumed": resumed,
            "complete": complete,
        }
    _summarize(rep)
    if complete and rep.mstd_sets and 2 not in pool.primes:
        check_two_exclusion(rep)
    rep.elapsed = time.perf_counter() - t0
    return rep


def two_addition_excess(S: FiniteSet) -> tuple[int, int]:
    """(new differences, new sums) when 2 is added to S."""
    T = S.union([2])
    return diff_card(T) - diff_card(S), sum_card(T) - sum_card(S)


def check_two_exclusion(report: PrimeSearchReport, details: Optional[list] = None) -> bool:
    """For every found set: margin <= 4, S u {2} not sum-dominant, and adding 2
    brings at least 7 more differences than sums."""
    ok = True
    for S in report.mstd_sets:
        m = classify(S).margin
        with_two = classify(S.union([2])).margin
        nd, ns = two_addition_excess(S)
        good = m <= 4 and with_two <= 0 and nd - ns >= 7
        if not good and details is not None:
            details.append({"set": list(S.elements), "margin": m, "margin_with_2": with_two, "excess": nd - ns})
        ok &= good
    report.two_exclusion_ok = ok
    return ok


@dataclass(frozen=True)
class TupleSpec:
    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = tuple(int(o) for o in self.offsets)
        if len(set(offs)) != len(offs):
            raise ValueError("offsets must be distinct")
        offs = tuple(sorted(offs))
        object.__setattr__(self, "offsets", tuple(o - offs[0] for o in offs))

    @property
    def m(self) -> int:
        return len(self.offsets)


def is_admissible(t: TupleSpec) -> bool:
    # a modulus k > m can never be covered by m offsets
    return all(len({b % k for b in t.offsets}) < k for k in range(2, t.m + 1))


def find_match(t: TupleSpec, n_max: int) -> Optional[int]:
    """Smallest n in [1, n_max] with every offset + n prime."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    top = t.offsets[-1] + n_max
    flags = bytearray(top + 1)
    for p in primes_upto(top):
        flags[p] = 1
    for n in range(1, n_max + 1):
        if all(flags[b + n] for b in t.offsets):
            return n
    return None
