import random
import warnings
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mstd.setcore import (
    DuplicateElementWarning,
    FiniteSet,
    GapForm,
    SetParseError,
    Verdict,
    classify,
    contains_ap,
    diff_stats,
    diffset,
    is_symmetric,
    naive_classify,
    naive_diffset,
    naive_sumset,
    normalize_affine,
    parse_roster,
    parse_set,
    parse_spohn,
    signed_diffset,
    sumset,
    to_spohn,
)

S = FiniteSet.of

sets_small = st.lists(st.integers(0, 60), min_size=1, max_size=12).map(S)
sets_pair = st.lists(st.integers(0, 60), min_size=2, max_size=12, unique=True).map(S)


# --- parsing -----------------------------------------------------------------


def test_parse_roster_example():
    assert parse_roster("{3,2,15,10,9}") == S([2, 3, 9, 10, 15])


def test_parse_roster_singleton_and_whitespace():
    assert parse_roster("{0}").elements == (0,)
    assert parse_roster("  { 4 ,1, 2 } ").elements == (1, 2, 4)


def test_parse_roster_duplicates_warn():
    with pytest.warns(DuplicateElementWarning):
        A = parse_roster("{5,5,5}")
    assert A.elements == (5,)


def test_parse_roster_no_warning_without_duplicates():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_roster("{1,2}")


@pytest.mark.parametrize(
    "text, token",
    [("{1,x,3}", "x"), ("{1,-2}", "-2"), ("{}", "{}"), ("1,2", "1"), ("{1,,2}", "")],
)
def test_parse_roster_errors(text, token):
    with pytest.raises(SetParseError) as ei:
        parse_roster(text)
    assert ei.value.token == token
    assert ei.value.position >= 0


def test_parse_roster_error_position():
    with pytest.raises(SetParseError) as ei:
        parse_roster("{10,20,abc}")
    assert ei.value.position == 7


def test_parse_spohn_examples():
    assert parse_spohn("(2|1,6,1,5)").elements == (2, 3, 9, 10, 15)
    assert parse_spohn("(7|)").elements == (7,)
    assert parse_spohn("(0|2,1,1,3,7,1,2)").elements == (0, 2, 3, 4, 7, 14, 15, 17)


@pytest.mark.parametrize("text", ["(0|1,0,2)", "(0|1,-3)"])
def test_parse_spohn_nonpositive_gap(text):
    with pytest.raises(SetParseError, match="gaps must be positive"):
        parse_spohn(text)


@pytest.mark.parametrize("text", ["(0 1,2)", "(a|1)", "0|1,2", "(0|1,b)"])
def test_parse_spohn_malformed(text):
    with pytest.raises(SetParseError):
        parse_spohn(text)


def test_parse_set_dispatch():
    assert parse_set("(2|1,6,1,5)") == parse_set("{2,3,9,10,15}")


def test_to_spohn_examples():
    assert str(to_spohn(S([2, 3, 9, 10, 15]))) == "(2|1,6,1,5)"
    assert str(to_spohn(S([0]))) == "(0|)"
    Ap = S([103, 127, 151, 199, 211, 223, 283, 307, 331])
    assert to_spohn(Ap) == GapForm(103, (24, 24, 48, 12, 12, 60, 24, 24))


@given(sets_small)
def test_spohn_round_trip(A):
    assert parse_spohn(str(to_spohn(A))) == A
    assert parse_roster(A.roster()) == A


def test_finite_set_invariants():
    with pytest.raises(ValueError):
        FiniteSet(())
    with pytest.raises(ValueError):
        FiniteSet((3, 2))
    with pytest.raises(ValueError):
        FiniteSet((-1, 2))
    with pytest.raises(ValueError):
        FiniteSet((0, 2**62))
    FiniteSet((0, 2**62 - 1))


# --- arithmetic ----------------------------------------------------------------


def test_sumset_examples():
    assert sumset(S([0, 1, 2, 4])).elements == (0, 1, 2, 3, 4, 5, 6, 8)
    assert sumset(S([0])).elements == (0,)
    assert sumset(S([3, 5, 7, 9, 11])).elements == (6, 8, 10, 12, 14, 16, 18, 20, 22)


def test_diffset_examples():
    assert signed_diffset(S([0, 1, 2, 4])) == (-4, -3, -2, -1, 0, 1, 2, 3, 4)
    assert len(diffset(S([0, 1, 2, 4]))) == 9
    assert diffset(S([7])).elements == (0,)
    assert signed_diffset(S([0, 1, 3])) == (-3, -2, -1, 0, 1, 2, 3)


def test_diffset_is_shifted_signed_set():
    A = S([5, 6, 9, 20])
    w = A.diameter
    assert diffset(A).elements == tuple(d + w for d in signed_diffset(A))


def test_classify_examples():
    c = classify(S([0, 1, 2, 4]))
    assert (c.sum_card, c.diff_card, c.margin, c.verdict) == (8, 9, -1, Verdict.DIFFERENCE_DOMINANT)
    c = classify(S([3, 5, 7, 9, 11]))
    assert c.margin == 0 and c.verdict is Verdict.BALANCED
    # naive double loop over all 64 ordered pairs gives 26 sums / 25 differences
    c = classify(S([0, 2, 3, 4, 7, 11, 12, 14]))
    assert (c.sum_card, c.diff_card, c.margin, c.verdict) == (26, 25, 1, Verdict.SUM_DOMINANT)


def test_diff_stats_examples():
    assert diff_stats(S(range(6))) == diff_stats(S([0, 1, 2, 3, 4, 5]))
    ds = diff_stats(S(range(6)))
    assert (ds.distinct_pos, ds.collision_excess) == (5, 10)
    ds = diff_stats(S([0, 1, 3]))
    assert (ds.distinct_pos, ds.collision_excess) == (3, 0)
    ds = diff_stats(S([0, 2, 3, 4, 7, 11, 12, 14]))
    assert (ds.distinct_pos, ds.collision_excess) == (12, 16)
    assert classify(S([0, 2, 3, 4, 7, 11, 12, 14])).diff_card == 2 * 12 + 1


def test_oracle_equivalence_exhaustive_0_to_14():
    for mask in range(1, 1 << 15):
        els = tuple(i for i in range(15) if mask >> i & 1)
        A = FiniteSet(els)
        assert set(sumset(A)) == naive_sumset(els)
        assert set(signed_diffset(A)) == naive_diffset(els)


def test_oracle_equivalence_random():
    rng = random.Random(1)
    for _ in range(10_000):
        els = rng.sample(range(10**6 + 1), rng.randint(1, 16))
        A = S(els)
        assert classify(A) == naive_classify(els)


@given(sets_small)
def test_diff_card_from_distinct_positive(A):
    c = classify(A)
    ds = diff_stats(A)
    n = len(A)
    assert c.diff_card == 2 * ds.distinct_pos + 1
    assert c.diff_card == n * (n - 1) + 1 - 2 * ds.collision_excess
    assert 0 <= ds.collision_excess <= n * (n - 1) // 2 - (n - 1)


@given(sets_small)
def test_cardinality_bounds(A):
    n = len(A)
    c = classify(A)
    assert 2 * n - 1 <= c.sum_card <= n * (n + 1) // 2
    assert 2 * n - 1 <= c.diff_card <= n * (n - 1) + 1
    assert (c.verdict is Verdict.SUM_DOMINANT) == (c.margin > 0)
    assert (c.verdict is Verdict.BALANCED) == (c.margin == 0)


@given(sets_small, st.integers(1, 50), st.integers(0, 1000))
def test_affine_invariance(A, u, v):
    B = S([u * a + v for a in A])
    assert classify(B) == classify(A)
    R = S([A.max - a for a in A])
    assert classify(R) == classify(A)


# --- structure -----------------------------------------------------------------


def test_normalize_examples():
    Ap = S([103, 127, 151, 199, 211, 223, 283, 307, 331])
    assert normalize_affine(Ap).elements == (0, 2, 4, 8, 9, 10, 15, 17, 19)
    assert normalize_affine(S([0, 1, 2])).elements == (0, 1, 2)
    assert normalize_affine(S([10, 30, 50])).elements == (0, 1, 2)
    with pytest.raises(ValueError):
        normalize_affine(S([4]))


@given(sets_pair, st.integers(1, 50), st.integers(0, 1000))
def test_normalize_constant_on_orbits(A, u, v):
    N = normalize_affine(A)
    assert normalize_affine(N) == N
    assert normalize_affine(S([u * a + v for a in A])) == N
    assert normalize_affine(S([A.max - a for a in A])) == N


def test_is_symmetric_examples():
    assert is_symmetric(S([3, 5, 7, 9, 11])) == 14
    assert is_symmetric(S([0, 1, 3, 4])) == 4
    assert is_symmetric(S([0, 1, 2, 4])) is None


def test_is_symmetric_matches_definition():
    for mask in range(1, 1 << 10):
        A = S(i for i in range(10) if mask >> i & 1)
        centres = [a for a in range(0, 20) if {a - x for x in A} == set(A)]
        assert is_symmetric(A) == (centres[0] if centres else None)


def test_symmetric_sets_balanced_exhaustive():
    for mask in range(1, 1 << 17):
        A = FiniteSet(tuple(i for i in range(17) if mask >> i & 1))
        if is_symmetric(A) is not None:
            assert classify(A).margin == 0


@given(st.lists(st.integers(0, 300), min_size=1, max_size=15), st.integers(0, 100))
def test_symmetric_construction_balanced(B, extra):
    a = max(B) + extra
    A = S(B + [a - x for x in B])
    assert is_symmetric(A) is not None
    assert classify(A).margin == 0


def test_contains_ap_examples():
    assert contains_ap(S([0, 2, 3, 4, 7]), 3)
    assert not contains_ap(S([0, 1, 3, 7]), 3)
    assert contains_ap(S([0, 2, 3, 4, 6, 8]), 4)
    with pytest.raises(ValueError):
        contains_ap(S([0, 1]), 2)


@given(sets_small, st.integers(3, 5))
def test_contains_ap_brute(A, k):
    els = list(A)
    expect = any(
        len({c[i + 1] - c[i] for i in range(k - 1)}) == 1 for c in combinations(els, k)
    )
    assert contains_ap(A, k) == expect


def _is_ap(els):
    return len({b - a for a, b in zip(els, els[1:])}) <= 1


@given(st.integers(0, 100), st.integers(1, 30), st.integers(1, 20))
def test_ap_extremal_forward(start, step, n):
    A = S([start + i * step for i in range(n)])
    c = classify(A)
    assert c.sum_card == c.diff_card == 2 * n - 1


def test_ap_extremal_converse_exhaustive():
    for mask in range(1, 1 << 15):
        els = tuple(i for i in range(15) if mask >> i & 1)
        c = classify(FiniteSet(els))
        n = len(els)
        assert (c.sum_card == 2 * n - 1) == _is_ap(els)
        assert (c.diff_card == 2 * n - 1) == _is_ap(els)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 2**62 - 1), min_size=1, max_size=6))
def test_huge_elements(els):
    A = S(els)
    assert classify(A) == naive_classify(els)
