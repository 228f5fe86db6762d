"""Exhaustive enumeration of bounded-diameter integer sets.

Sets are enumerated as gap vectors (a1, ..., a_{n-1}) with sum <= D, min fixed
at 0. A depth-first walk keeps multiset counters of pairwise sums and positive
differences, so extending by one element costs O(n) and backtracking undoes
exactly that update. Leaf classification never touches the full O(n^2) pair set.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable, NamedTuple, Optional

from .setcore import FiniteSet, GapForm, classify, contains_ap, to_spohn

FILTERS = ("none", "require_ap4", "require_ap3", "symmetric_only")
CHECKS = ("mstd", "lemmas")


@dataclass(frozen=True)
class SearchParams:
    n: int
    diameter_max: int
    canonical_only: bool = True
    filter: str = "none"
    check: str = "mstd"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if self.diameter_max < self.n - 1:
            raise ValueError(f"diameter {self.diameter_max} too small for {self.n} elements")
        if self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}")
        if self.check not in CHECKS:
            raise ValueError(f"unknown check {self.check!r}")


class Node(NamedTuple):
    gaps: tuple
    elements: tuple
    sum_card: int
    diff_card: int
    distinct_pos: int


@dataclass
class SearchReport:
    command: str
    params: dict
    sets_enumerated: int = 0
    mstd_found: list = field(default_factory=list)
    margin_histogram: dict = field(default_factory=dict)
    max_x_seen: Optional[int] = None
    inequality_violations: list = field(default_factory=list)
    expect_none: bool = True
    elapsed: float = 0.0

    @property
    def falsified(self) -> bool:
        """A result the verified statement says cannot exist was found."""
        return self.expect_none and bool(self.mstd_found or self.inequality_violations)

    def merge(self, other: "SearchReport") -> None:
        self.sets_enumerated += other.sets_enumerated
        self.mstd_found.extend(other.mstd_found)
        for m, c in other.margin_histogram.items():
            self.margin_histogram[m] = self.margin_histogram.get(m, 0) + c
        if other.max_x_seen is not None:
            self.max_x_seen = other.max_x_seen if self.max_x_seen is None else max(self.max_x_seen, other.max_x_seen)
        self.inequality_violations.extend(other.inequality_violations)

    def finalize(self) -> None:
        self.mstd_found = sorted(set(self.mstd_found), key=lambda s: (s.gaps, s.elements))
        self.inequality_violations.sort(key=lambda v: (v["gaps"], v["rule"]))
        self.margin_histogram = dict(sorted(self.margin_histogram.items()))

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "params": self.params,
            "sets_enumerated": self.sets_enumerated,
            "mstd_count": len(self.mstd_found),
            "mstd_found": [{"set": list(s.elements), "spohn": str(to_spohn(s))} for s in self.mstd_found],
            "margin_histogram": {str(k): v for k, v in self.margin_histogram.items()},
            "max_x_seen": self.max_x_seen,
            "inequality_violations": self.inequality_violations,
            "falsified": self.falsified,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _lemma_violations(gaps, els, sum_card, distinct_pos):
    n = len(els)
    x = n * (n - 1) // 2 - distinct_pos
    out = []
    if 2 * sum_card > n * (n + 1) - x:
        out.append({"gaps": list(gaps), "set": list(els), "rule": f"2|A+A| <= {n * (n + 1)} - x", "x": x, "sum_card": sum_card})
    if n == 6 and contains_ap(FiniteSet(els), 3) and 2 * sum_card > 41 - x:
        out.append({"gaps": list(gaps), "set": list(els), "rule": "3-AP: 2|A+A| <= 40 - (x-1)", "x": x, "sum_card": sum_card})
    return x, out


def _walk(params: SearchParams, prefix: tuple, visitor: Optional[Callable[[Node], None]] = None) -> SearchReport:
    n, D = params.n, params.diameter_max
    rep = SearchReport("enumerate", asdict(params))
    sc = [0] * (2 * D + 1)
    dc = [0] * (D + 1)
    els = [0]
    gaps: list[int] = []
    sc[0] = 1
    cnt = [1, 0]  # distinct sums, distinct positive differences

    canonical = params.canonical_only
    flt = params.filter
    lemmas = params.check == "lemmas"
    hist = rep.margin_histogram
    found = rep.mstd_found

    def push(e):
        s_new = d_new = 0
        for a in els:
            s = e + a
            sc[s] += 1
            if sc[s] == 1:
                s_new += 1
            d = e - a
            dc[d] += 1
            if dc[d] == 1:
                d_new += 1
        s = 2 * e
        sc[s] += 1
        if sc[s] == 1:
            s_new += 1
        els.append(e)
        cnt[0] += s_new
        cnt[1] += d_new

    def pop():
        e = els.pop()
        s = 2 * e
        sc[s] -= 1
        if sc[s] == 0:
            cnt[0] -= 1
        for a in els:
            s = e + a
            sc[s] -= 1
            if sc[s] == 0:
                cnt[0] -= 1
            d = e - a
            dc[d] -= 1
            if dc[d] == 0:
                cnt[1] -= 1

    def leaf():
        g = tuple(gaps)
        if canonical and not (math.gcd(*g) == 1 and g <= g[::-1]):
            return
        if flt != "none":
            if flt == "symmetric_only":
                if g != g[::-1]:
                    return
            elif not contains_ap(FiniteSet(tuple(els)), 4 if flt == "require_ap4" else 3):
                return
        S, Dp = cnt
        margin = S - (2 * Dp + 1)
        rep.sets_enumerated += 1
        hist[margin] = hist.get(margin, 0) + 1
        if margin > 0:
            found.append(FiniteSet(tuple(els)))
        if lemmas:
            x, bad = _lemma_violations(g, els, S, Dp)
            if rep.max_x_seen is None or x > rep.max_x_seen:
                rep.max_x_seen = x
            rep.inequality_violations.extend(bad)
        if visitor is not None:
            visitor(Node(g, tuple(els), S, 2 * Dp + 1, Dp))

    def dfs(total):
        remaining = n - 1 - len(gaps)
        if remaining == 0:
            leaf()
            return
        # leave room for the remaining gaps, each >= 1
        for g in range(1, D - total - (remaining - 1) + 1):
            gaps.append(g)
            push(total + g)
            dfs(total + g)
            pop()
            gaps.pop()

    total = 0
    for g in prefix:
        total += g
        gaps.append(g)
        push(total)
    if total + (n - 1 - len(gaps)) <= D:
        dfs(total)
    return rep


def partition_prefixes(params: SearchParams, workers: int) -> list[tuple]:
    """Split on the first gap, or the first two gaps when many workers are available."""
    n, D = params.n, params.diameter_max
    depth = 1 if workers <= 4 or n < 4 else 2
    out = []
    for g1 in range(1, D - (n - 2) + 1):
        if depth == 1:
            out.append((g1,))
        else:
            for g2 in range(1, D - g1 - (n - 3) + 1):
                out.append((g1, g2))
    return out


def _walk_task(args):
    params, prefix = args
    return _walk(params, prefix)


def enumerate_sets(params: SearchParams, visitor: Optional[Callable[[Node], None]] = None, workers: int = 1) -> SearchReport:
    """Visit every gap vector with sum <= D exactly once, in lexicographic order.

    ``visitor`` is called for each enumerated leaf; it is only supported
    single-process since it cannot be shipped to workers.
    """
    t0 = time.perf_counter()
    rep = SearchReport("enumerate", asdict(params))
    if workers <= 1:
        rep.merge(_walk(params, (), visitor))
    else:
        if visitor is not None:
            raise ValueError("visitor callbacks require workers=1")
        tasks = [(params, p) for p in partition_prefixes(params, workers)]
        with ProcessPoolExecutor(workers) as ex:
            for part in ex.map(_walk_task, tasks, chunksize=max(1, len(tasks) // (8 * workers))):
                rep.merge(part)
    rep.finalize()
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_no_mstd(n: int, D: int, workers: int = 1) -> SearchReport:
    if not 3 <= n <= 7:
        raise ValueError("verify_no_mstd is meant for n in 3..7; use find_mstd for larger n")
    rep = enumerate_sets(SearchParams(n, D, canonical_only=True), workers=workers)
    rep.command = "search verify"
    return rep


def find_mstd(n: int, D: int, workers: int = 1) -> SearchReport:
    rep = enumerate_sets(SearchParams(n, D, canonical_only=True), workers=workers)
    rep.command = "search find"
    rep.expect_none = False
    return rep


def check_lemma_inequalities(n: int, D: int, workers: int = 1) -> SearchReport:
    """Check 2|A+A| <= n(n+1) - x on every set (plus the 3-AP form at n = 6),
    where x = C(n,2) - #distinct positive differences."""
    if n not in (6, 7):
        raise ValueError("lemma inequalities are stated for n = 6 and n = 7")
    rep = enumerate_sets(SearchParams(n, D, canonical_only=True, check="lemmas"), workers=workers)
    rep.command = "search lemmas"
    return rep


def check_prop4(D: int, workers: int = 1) -> SearchReport:
    """Every 6-set of diameter <= D containing a 4-term AP has margin <= 0."""
    rep = enumerate_sets(SearchParams(6, D, canonical_only=False, filter="require_ap4"), workers=workers)
    rep.command = "search prop4"
    return rep


def verify_ap_plus_k(ap_len: int, k_added: int, R: int, step: int = 1) -> SearchReport:
    """Add k_added integers from [-R, (ap_len-1)*step + R] to the progression
    {0, step, ..., (ap_len-1)*step} and classify every result.

    For k_added <= 2 no sum-dominant set is expected. Found sets are
    translated to min 0.
    """
    if ap_len < 3:
        raise ValueError("ap_len must be >= 3")
    if not 1 <= k_added <= 4:
        raise ValueError("k_added must be in 1..4")
    t0 = time.perf_counter()
    ap = [i * step for i in range(ap_len)]
    apset = set(ap)
    top = ap[-1]
    pool = [v for v in range(-R, top + R + 1) if v not in apset]
    rep = SearchReport(
        "search ap-plus",
        {"ap_len": ap_len, "k_added": k_added, "range": R, "step": step},
        expect_none=k_added <= 2,
    )
    seen = set()
    for extra in combinations(pool, k_added):
        lo = min(extra[0], 0)
        A = FiniteSet(tuple(sorted(v - lo for v in ap + list(extra))))
        if A in seen:
            continue
        seen.add(A)
        c = classify(A)
        rep.sets_enumerated += 1
        rep.margin_histogram[c.margin] = rep.margin_histogram.get(c.margin, 0) + 1
        if c.margin > 0:
            rep.mstd_found.append(A)
    rep.finalize()
    rep.elapsed = time.perf_counter() - t0
    return rep


def compositions_count(n: int, D: int) -> int:
    """Number of gap vectors of length n-1 with positive entries summing to <= D."""
    return sum(math.comb(s - 1, n - 2) for s in range(n - 1, D + 1))


def expand_orbits(canonical: list, D: int) -> list:
    """All scalings and reflections of the canonical sets that keep diameter <= D."""
    out = set()
    for A in canonical:
        g = A.gaps
        for u in range(1, D // A.diameter + 1):
            for gg in (g, g[::-1]):
                out.add(GapForm(0, tuple(u * x for x in gg)).to_set())
    return sorted(out, key=lambda s: (s.gaps, s.elements))
