"""Runnable pass/fail table of the headline claims.

Each criterion is a function returning (passed, detail). ``quick`` runs the
cheap subset: the smallest prime set at 73, the family grid at pmax=10 and the
six-element search at diameter 25.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import families, primes, search
from .setcore import FiniteSet, classify, is_symmetric, naive_classify, normalize_affine

PRIME73 = FiniteSet((3, 5, 7, 13, 17, 19, 23, 43, 47, 53, 59, 61, 67, 71, 73))
MIN8 = FiniteSet((0, 2, 3, 4, 7, 11, 12, 14))
A8 = FiniteSet((0, 2, 4, 8, 9, 10, 15, 17, 19))
A11 = FiniteSet((0, 4, 6, 8, 11, 14, 19, 21, 25))
A8_PRIME = FiniteSet(tuple(103 + 12 * a for a in A8))
A11_PRIME = FiniteSet(tuple(23 + 6 * a for a in A11))
P_CNMXZ = FiniteSet((19, 79, 109, 139, 229, 349, 379, 439))
AP_PLUS_FOUR = FiniteSet.of([0, 1, 3, *range(7, 18), 24])


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: dict

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}


def brute_force_mstd(n: int, D: int) -> set:
    """Canonical forms of all sum-dominant n-subsets of {0..D} via the naive classifier."""
    out = set()
    for rest in combinations(range(1, D + 1), n - 1):
        els = (0,) + rest
        if naive_classify(els).margin > 0:
            out.add(normalize_affine(FiniteSet(els)))
    return out


def c1_prime73(quick=False, threads=1, seed=0):
    r73 = primes.search_prime_mstd(primes.sieve(73), threads=threads)
    r71 = primes.search_prime_mstd(primes.sieve(71), threads=threads)
    ok = r73.min_by_max == [PRIME73] and r73.unique_min and r71.count == 0
    return ok, {
        "min_by_max_73": [list(s.elements) for s in r73.min_by_max],
        "unique_min_73": r73.unique_min,
        "count_71": r71.count,
    }


def c2_census(quick=False, threads=1, seed=0):
    r = primes.search_prime_mstd(primes.sieve(109), threads=threads)
    bad = []
    two = primes.check_two_exclusion(r, bad)
    ok = r.count == 2725 and r.max_margin is not None and r.max_margin <= 4 and two
    return ok, {"count": r.count, "max_margin": r.max_margin, "two_exclusion_ok": two, "exclusion_failures": bad[:5]}


def c3_six_sets(quick=False, threads=1, seed=0):
    D = 25 if quick else 36
    r = search.verify_no_mstd(6, D, workers=threads)
    return not r.mstd_found, {"diameter": D, "sets_enumerated": r.sets_enumerated, "mstd_found": len(r.mstd_found)}


def c4_size8(quick=False, threads=1, seed=0):
    r7 = search.verify_no_mstd(7, 24, workers=threads)
    r14 = search.find_mstd(8, 14, workers=threads)
    r13 = search.find_mstd(8, 13, workers=threads)
    brute14 = brute_force_mstd(8, 14)
    ok = (
        not r7.mstd_found
        and MIN8 in r14.mstd_found
        and not r13.mstd_found
        and set(r14.mstd_found) == brute14
        and not any(s.diameter <= 13 for s in brute14)
    )
    return ok, {
        "n7_d24_mstd": len(r7.mstd_found),
        "n8_d14": [str(s) for s in r14.mstd_found],
        "n8_d13_mstd": len(r13.mstd_found),
        "brute_force_d14": sorted(str(s) for s in brute14),
    }


def c5_families(quick=False, threads=1, seed=0):
    pmax = 10 if quick else 30
    reps = families.verify_all_families(pmax, workers=threads)
    bad = {r.id: r.violations for r in reps if r.violations}
    return not bad, {"pmax": pmax, "instances": sum(r.instances_checked for r in reps), "violations": bad}


def c6_regression(quick=False, threads=1, seed=0):
    k = classify(FiniteSet((0, 1, 2, 4)))
    k4 = classify(FiniteSet((0, 2, 3, 4)))
    ok = (k.sum_card, k.diff_card, k.margin) == (8, 9, -1) and k4.diff_card - k4.sum_card == 3
    return ok, {"K": [k.sum_card, k.diff_card, k.margin], "K4_diff_minus_sum": k4.diff_card - k4.sum_card}


def c7_named_sets(quick=False, threads=1, seed=0):
    named = {"ap_plus_four": AP_PLUS_FOUR, "P": P_CNMXZ, "A8_prime": A8_PRIME, "A11_prime": A11_PRIME}
    margins = {k: classify(v).margin for k, v in named.items()}
    return all(m > 0 for m in margins.values()), {"margins": margins}


def c8_lemmas(quick=False, threads=1, seed=0):
    r6 = search.check_lemma_inequalities(6, 25, workers=threads)
    r7 = search.check_lemma_inequalities(7, 18, workers=threads)
    ok = not r6.inequality_violations and not r7.inequality_violations
    return ok, {
        "n6_violations": len(r6.inequality_violations),
        "n7_violations": len(r7.inequality_violations),
        "first": (r6.inequality_violations + r7.inequality_violations)[:3],
    }


def c9_symmetric_and_ap4(quick=False, threads=1, seed=0):
    bad_sym = 0
    checked = 0
    for mask in range(1, 1 << 17):
        A = FiniteSet(tuple(i for i in range(17) if mask >> i & 1))
        if is_symmetric(A) is not None:
            checked += 1
            bad_sym += classify(A).margin != 0
    rng = random.Random(seed)
    for _ in range(10_000):
        B = rng.sample(range(200), rng.randint(1, 12))
        a = max(B) + rng.randint(0, 50)
        A = FiniteSet.of(B + [a - x for x in B])
        bad_sym += classify(A).margin != 0
    r4 = search.check_prop4(30, workers=threads)
    ok = bad_sym == 0 and not r4.mstd_found
    return ok, {"symmetric_exhaustive": checked, "symmetric_failures": bad_sym, "ap4_sets": r4.sets_enumerated, "ap4_mstd": len(r4.mstd_found)}


def c10_oracle_and_determinism(quick=False, threads=1, seed=0):
    mism = 0
    for mask in range(1, 1 << 15):
        els = tuple(i for i in range(15) if mask >> i & 1)
        mism += classify(FiniteSet(els)) != naive_classify(els)
    rng = random.Random(seed)
    for _ in range(10_000):
        els = rng.sample(range(10**6 + 1), rng.randint(1, 20))
        mism += classify(FiniteSet.of(els)) != naive_classify(els)
    p = search.SearchParams(7, 16, canonical_only=False)
    single = search.enumerate_sets(p).to_json(timing=False)
    multi = search.enumerate_sets(p, workers=max(2, threads)).to_json(timing=False)
    pool = primes.sieve(53)
    ps = primes.search_prime_mstd(pool, min_card=1).to_json(timing=False)
    pm = primes.search_prime_mstd(pool, min_card=1, threads=max(2, threads)).to_json(timing=False)
    ok = mism == 0 and single == multi and ps == pm
    return ok, {"oracle_mismatches": mism, "search_parallel_identical": single == multi, "primes_parallel_identical": ps == pm}


def c11_constructions(quick=False, threads=1, seed=0):
    t8 = primes.TupleSpec(tuple(12 * a for a in A8))
    t11 = primes.TupleSpec(tuple(6 * a for a in A11))
    isp = set(primes.primes_upto(1000))
    m8 = primes.find_match(t8, 200)
    m11 = primes.find_match(t11, 100)
    ok = (
        primes.is_admissible(t8)
        and m8 == 103
        and m11 == 23
        and all(b + 103 in isp for b in t8.offsets)
        and all(b + 23 in isp for b in t11.offsets)
    )
    return ok, {"admissible_12A8": primes.is_admissible(t8), "admissible_6A11": primes.is_admissible(t11), "match_12A8": m8, "match_6A11": m11}


CRITERIA = [
    (1, "smallest prime MSTD set, max 73, unique", c1_prime73),
    (2, "census of primes 3..109: 2725 sets, margin <= 4, 2 excluded", c2_census),
    (3, "no MSTD 6-set (bounded diameter)", c3_six_sets),
    (4, "none at n=7, minimal n=8 example", c4_size8),
    (5, "six-element families never sum-dominant", c5_families),
    (6, "regression values {0,1,2,4}, {0,2,3,4}", c6_regression),
    (7, "named sets are sum-dominant", c7_named_sets),
    (8, "x-bound inequalities for n=6,7", c8_lemmas),
    (9, "symmetric => balanced; 4-AP 6-sets not MSTD", c9_symmetric_and_ap4),
    (10, "bit-vector vs naive oracle; parallel determinism", c10_oracle_and_determinism),
    (11, "admissible 12*A8, matches 103 and 23", c11_constructions),
]
QUICK = (1, 5, 3)


def run(quick: bool = False, threads: int = 1, seed: int = 0, only=None, progress=None) -> list[CriterionResult]:
    ids = QUICK if quick else [c[0] for c in CRITERIA]
    if only:
        ids = [i for i in ids if i in set(only)]
    table = {c[0]: c for c in CRITERIA}
    results = []
    for i in ids:
        _, name, fn = table[i]
        ok, detail = fn(quick=quick, threads=threads, seed=seed)
        res = CriterionResult(i, name, bool(ok), detail)
        if progress:
            progress(res)
        results.append(res)
    return results
