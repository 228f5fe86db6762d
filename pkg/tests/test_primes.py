import json
import random

import numpy as np
import pytest

from mstd._census import subset_census
from mstd.primes import (
    PrimePool,
    PrimeSearchReport,
    TupleSpec,
    check_two_exclusion,
    find_match,
    is_admissible,
    primes_upto,
    search_prime_mstd,
    sieve,
    two_addition_excess,
)
from mstd.setcore import FiniteSet, classify, naive_classify, normalize_affine

A8 = (0, 2, 4, 8, 9, 10, 15, 17, 19)
A11 = (0, 4, 6, 8, 11, 14, 19, 21, 25)
PRIME73 = FiniteSet((3, 5, 7, 13, 17, 19, 23, 43, 47, 53, 59, 61, 67, 71, 73))


def _trial_division(n):
    return n > 1 and all(n % q for q in range(2, int(n**0.5) + 1))


def test_sieve_examples():
    assert sieve(30, include_two=True).primes == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    p73 = sieve(73)
    assert len(p73.primes) == 20 and p73.primes[0] == 3 and p73.primes[-1] == 73
    assert len(sieve(109).primes) == 28
    with pytest.raises(ValueError):
        sieve(1)


def test_sieve_matches_trial_division():
    assert primes_upto(2000) == [n for n in range(2001) if _trial_division(n)]


def _brute_census(pool, min_card=1):
    out = []
    P = len(pool)
    for mask in range(1, 1 << P):
        els = [pool[i] for i in range(P) if mask >> i & 1]
        if len(els) >= min_card and naive_classify(els).margin > 0:
            out.append(FiniteSet(tuple(els)))
    return sorted(out)


def test_census_matches_brute_force_small_pools():
    # {0..n} pools are rich in sum-dominant subsets, unlike small prime pools
    for pool in (tuple(range(0, 15)), tuple(range(1, 16)), (0, 2, 3, 4, 7, 11, 12, 14, 16, 17)):
        rep = search_prime_mstd(PrimePool(pool[-1], pool), min_card=1)
        brute = _brute_census(pool)
        assert rep.mstd_sets == brute
        assert rep.count == len(brute) > 0
        assert rep.nodes == (1 << len(pool))


def test_census_prime_pool_brute_force():
    pool = sieve(61)
    rep = search_prime_mstd(pool, min_card=1)
    assert rep.mstd_sets == _brute_census(pool.primes)


def test_incremental_counters_sampled():
    vals = np.array(sieve(61).primes, np.int64)
    samples = np.zeros((20_000, 3), np.int64)
    found = np.zeros(16, np.int64)
    _, nodes, ns = subset_census(vals, 0, 0, 1, found, 7, samples)
    assert ns >= 10_000
    for mask, S, Dp in samples[: min(ns, len(samples))]:
        els = tuple(int(v) for i, v in enumerate(vals) if (int(mask) >> i) & 1)
        c = classify(FiniteSet(els))
        assert (S, 2 * Dp + 1) == (c.sum_card, c.diff_card)


def test_prefix_partition_covers_tree():
    vals = np.array(sieve(47).primes, np.int64)
    buf = np.zeros(64, np.int64)
    tot = 0
    for prefix in range(1 << 3):
        _, nodes, _ = subset_census(vals, 3, prefix, 1, buf, 0, np.zeros((1, 3), np.int64))
        tot += nodes
    assert tot == 1 << len(vals)


def test_smallest_prime_set_at_73():
    rep = search_prime_mstd(sieve(73))
    assert PRIME73 in rep.min_by_max
    assert all(s.max == 73 for s in rep.min_by_max)
    # the 16-element superset with 31 is sum-dominant as well (naive check)
    other = PRIME73.union([31])
    c = naive_classify(other.elements)
    assert (c.sum_card, c.diff_card) == (70, 69)
    assert rep.min_by_max == [other, PRIME73]
    assert rep.unique_min is False


def test_none_below_73():
    rep = search_prime_mstd(sieve(71))
    assert rep.count == 0 and rep.min_by_max == []


def test_no_min_card_agrees_at_73():
    a = search_prime_mstd(sieve(73), min_card=1)
    b = search_prime_mstd(sieve(73), min_card=8)
    assert a.mstd_sets == b.mstd_sets


def test_threads_identical():
    pool = sieve(67)
    base = search_prime_mstd(pool, min_card=1).to_json(timing=False)
    for t in (2, 4, 8):
        assert search_prime_mstd(pool, min_card=1, threads=t).to_json(timing=False) == base


def test_checkpoint_resume(tmp_path):
    pool = sieve(67)
    full = search_prime_mstd(pool, min_card=1)
    ck = tmp_path / "ck.json"
    part = search_prime_mstd(pool, min_card=1, checkpoint=ck, max_tasks=5)
    assert part.checkpoint["complete"] is False
    assert len(json.loads(ck.read_text())["done"]) == 5
    resumed = search_prime_mstd(pool, min_card=1, checkpoint=ck)
    assert resumed.checkpoint["prefixes_resumed"] == 5
    assert resumed.checkpoint["complete"] is True
    assert resumed.mstd_sets == full.mstd_sets
    assert resumed.nodes == full.nodes


def test_checkpoint_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    search_prime_mstd(sieve(43), min_card=1, checkpoint=ck)
    with pytest.raises(ValueError, match="different search"):
        search_prime_mstd(sieve(47), min_card=1, checkpoint=ck)


def test_pool_guard():
    big = PrimePool(200, tuple(primes_upto(200)[1:]))
    with pytest.raises(ValueError, match="override"):
        search_prime_mstd(big)


def test_report_json_round_trip():
    rep = search_prime_mstd(sieve(73))
    back = PrimeSearchReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert back.mstd_sets == rep.mstd_sets
    assert back.min_by_max == rep.min_by_max and back.max_margin == rep.max_margin


# --- exclusion of 2 ---------------------------------------------------------


def test_two_excess_small_set():
    # naive: {3,5,7} has 5 sums/5 differences, {2,3,5,7} has 9 sums/11 differences
    assert two_addition_excess(FiniteSet((3, 5, 7))) == (6, 4)


def test_two_excess_formula():
    """Adding 2 to k odd primes: 2k new odd differences, k+1 new sums."""
    rng = random.Random(5)
    odd = sieve(400).primes
    for _ in range(200):
        S = FiniteSet.of(rng.sample(odd, rng.randint(2, 20)))
        nd, ns = two_addition_excess(S)
        assert (nd, ns) == (2 * len(S), len(S) + 1)


def test_two_exclusion_prime73():
    T = PRIME73.union([2])
    assert classify(T).margin <= 0
    rep = search_prime_mstd(sieve(73))
    assert check_two_exclusion(rep) and rep.two_exclusion_ok


def test_two_exclusion_flags_failure():
    rep = PrimeSearchReport(sieve(20), 8)
    rep.mstd_sets = [FiniteSet((3, 5, 7))]
    bad = []
    assert check_two_exclusion(rep, bad) is False
    assert bad[0]["excess"] == 2


# --- admissible tuples --------------------------------------------------------


def test_admissible_examples():
    assert is_admissible(TupleSpec(tuple(12 * a for a in A8)))
    assert not is_admissible(TupleSpec((0, 1)))
    # 0, 2, 4 hit residues 0, 2, 1 mod 3
    assert not is_admissible(TupleSpec((0, 2, 4)))
    assert is_admissible(TupleSpec((0, 2, 6)))
    assert is_admissible(TupleSpec(tuple(6 * a for a in A11)))


def test_admissible_brute():
    rng = random.Random(2)
    for _ in range(300):
        offs = tuple(rng.sample(range(60), rng.randint(2, 7)))
        brute = all(len({b % k for b in offs}) < k for k in range(2, 70))
        assert is_admissible(TupleSpec(offs)) == brute


def test_tuple_normalized():
    assert TupleSpec((5, 9, 7)).offsets == (0, 2, 4)
    with pytest.raises(ValueError):
        TupleSpec((1, 1))


def test_find_match_examples():
    t8 = TupleSpec(tuple(12 * a for a in A8))
    assert find_match(t8, 200) == 103
    assert all(_trial_division(b + 103) for b in t8.offsets)
    assert [b + 103 for b in t8.offsets] == [103, 127, 151, 199, 211, 223, 283, 307, 331]
    t11 = TupleSpec(tuple(6 * a for a in A11))
    assert find_match(t11, 100) == 23
    assert [b + 23 for b in t11.offsets] == [23, 47, 59, 71, 89, 107, 137, 149, 173]
    assert find_match(TupleSpec((0, 1)), 1) is None
    assert find_match(TupleSpec((0, 1)), 1000) == 2


def test_find_match_linear_scan_oracle():
    # 103 and 23 are the smallest matches: trial-division scan
    t8 = [12 * a for a in A8]
    t11 = [6 * a for a in A11]
    assert next(n for n in range(1, 200) if all(_trial_division(b + n) for b in t8)) == 103
    assert next(n for n in range(1, 200) if all(_trial_division(b + n) for b in t11)) == 23


def test_named_prime_sets():
    A8p = FiniteSet(tuple(103 + 12 * a for a in A8))
    A11p = FiniteSet(tuple(23 + 6 * a for a in A11))
    P = FiniteSet((19, 79, 109, 139, 229, 349, 379, 439))
    for S in (A8p, A11p, P):
        assert naive_classify(S.elements).margin > 0
        assert all(_trial_division(p) for p in S)
    assert normalize_affine(A8p) == normalize_affine(FiniteSet(A8))
    assert normalize_affine(A11p) == normalize_affine(FiniteSet(A11))
