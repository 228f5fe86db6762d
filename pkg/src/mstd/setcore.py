"""Exact sumset / difference-set arithmetic on finite sets of non-negative integers.

Sets are stored as sorted tuples. Sums and differences are computed with
Python ints used as bit-vectors, falling back to hashed pair loops for very
sparse sets (huge diameter, few elements). The naive double loops are kept
alongside as oracles for the test-suite.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional

MAX_ELEMENT = 2**62 - 1


class SetParseError(ValueError):
    """Raised for a malformed set literal. Carries the offending token and its offset."""

    def __init__(self, message: str, token: str = "", position: int = -1):
        if position >= 0:
            message = f"{message} (token {token!r} at position {position})"
        super().__init__(message)
        self.token = token
        self.position = position


class DuplicateElementWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FiniteSet:
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        if not els:
            raise ValueError("a FiniteSet must be nonempty")
        for prev, cur in zip(els, els[1:]):
            if cur <= prev:
                raise ValueError(f"elements must be strictly increasing: {prev} then {cur}")
        if els[0] < 0:
            raise ValueError(f"elements must be non-negative, got {els[0]}")
        if els[-1] > MAX_ELEMENT:
            raise ValueError(f"element {els[-1]} exceeds 2**62 - 1")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, values: Iterable[int]) -> "FiniteSet":
        """Build from any iterable, sorting and dropping duplicates silently."""
        return cls(tuple(sorted(set(int(v) for v in values))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._lookup

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def _lookup(self) -> frozenset:
        # cached lazily; frozen dataclass so go through object.__setattr__
        try:
            return self.__dict__["_fs"]
        except KeyError:
            fs = frozenset(self.elements)
            object.__setattr__(self, "_fs", fs)
            return fs

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    @property
    def diameter(self) -> int:
        return self.elements[-1] - self.elements[0]

    @property
    def gaps(self) -> tuple[int, ...]:
        e = self.elements
        return tuple(b - a for a, b in zip(e, e[1:]))

    def union(self, other: Iterable[int]) -> "FiniteSet":
        return FiniteSet.of(list(self.elements) + list(other))

    def roster(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __str__(self) -> str:
        return self.roster()

    def __lt__(self, other: "FiniteSet") -> bool:
        return self.elements < other.elements


@dataclass(frozen=True)
class GapForm:
    """Spohn notation ``(base|g1,...,gk)``."""

    base: int
    gaps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(int(g) for g in self.gaps))
        if self.base < 0:
            raise ValueError("base must be non-negative")
        if any(g < 1 for g in self.gaps):
            raise ValueError("gaps must be positive")

    def to_set(self) -> FiniteSet:
        out = [self.base]
        for g in self.gaps:
            out.append(out[-1] + g)
        return FiniteSet(tuple(out))

    def __str__(self) -> str:
        return f"({self.base}|{','.join(map(str, self.gaps))})"


class Verdict(str, Enum):
    SUM_DOMINANT = "sum-dominant"
    BALANCED = "balanced"
    DIFFERENCE_DOMINANT = "difference-dominant"


@dataclass(frozen=True)
class Classification:
    sum_card: int
    diff_card: int
    margin: int
    verdict: Verdict

    @classmethod
    def from_cards(cls, sum_card: int, diff_card: int) -> "Classification":
        margin = sum_card - diff_card
        if margin > 0:
            v = Verdict.SUM_DOMINANT
        elif margin == 0:
            v = Verdict.BALANCED
        else:
            v = Verdict.DIFFERENCE_DOMINANT
        return cls(sum_card, diff_card, margin, v)

    @property
    def is_mstd(self) -> bool:
        return self.margin > 0


@dataclass(frozen=True)
class DiffStats:
    n: int
    distinct_pos: int
    collision_excess: int


# ---------------------------------------------------------------------------
# parsing / printing

_INT = re.compile(r"\s*(-?\d+)\s*")


def _split_ints(body: str, offset: int) -> list[int]:
    """Parse a comma-separated integer list; ``offset`` is where ``body`` starts in the input."""
    if body.strip() == "":
        return []
    values = []
    pos = 0
    for tok in body.split(","):
        m = _INT.fullmatch(tok)
        if m is None:
            raise SetParseError("malformed token", tok.strip(), offset + pos)
        values.append(int(m.group(1)))
        pos += len(tok) + 1
    return values


def _token_positions(body: str, offset: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    for tok in body.split(","):
        lead = len(tok) - len(tok.lstrip())
        out.append((tok.strip(), offset + pos + lead))
        pos += len(tok) + 1
    return out


def parse_roster(text: str) -> FiniteSet:
    """Parse ``{n1,n2,...}``. Duplicates are dropped with a DuplicateElementWarning."""
    s = text.strip()
    start = text.find("{")
    if not (s.startswith("{") and s.endswith("}")):
        raise SetParseError("roster must be enclosed in braces", s[:1] or s, max(start, 0))
    body = s[1:-1]
    values = _split_ints(body, start + 1)
    if not values:
        raise SetParseError("empty set", "{}", start)
    for v, (tok, pos) in zip(values, _token_positions(body, start + 1)):
        if v < 0:
            raise SetParseError("negative value", tok, pos)
    uniq = sorted(set(values))
    if len(uniq) != len(values):
        warnings.warn(f"duplicate elements dropped from {s}", DuplicateElementWarning, stacklevel=2)
    return FiniteSet(tuple(uniq))


def parse_spohn(text: str) -> FiniteSet:
    s = text.strip()
    start = text.find("(")
    if not (s.startswith("(") and s.endswith(")")) or "|" not in s:
        raise SetParseError("Spohn form must look like (b|g1,g2,...)", s[:1] or s, max(start, 0))
    bar = s.index("|")
    base_tok = s[1:bar]
    m = _INT.fullmatch(base_tok)
    if m is None:
        raise SetParseError("malformed base", base_tok.strip(), start + 1)
    base = int(m.group(1))
    if base < 0:
        raise SetParseError("negative base", base_tok.strip(), start + 1)
    body = s[bar + 1 : -1]
    gaps = _split_ints(body, start + bar + 1)
    for g, (tok, pos) in zip(gaps, _token_positions(body, start + bar + 1)):
        if g <= 0:
            raise SetParseError("gaps must be positive", tok, pos)
    return GapForm(base, tuple(gaps)).to_set()


def parse_set(text: str) -> FiniteSet:
    """Accept either roster or Spohn form."""
    s = text.strip()
    if s.startswith("("):
        return parse_spohn(s)
    return parse_roster(s)


def to_spohn(A: FiniteSet) -> GapForm:
    return GapForm(A.min, A.gaps)


# ---------------------------------------------------------------------------
# arithmetic


def _bits(A: FiniteSet, shift: int = 0) -> int:
    v = 0
    for a in A.elements:
        v |= 1 << (a - shift)
    return v


def _members(bits: int, offset: int = 0) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1 + offset)
        bits ^= low
    return tuple(out)


# bit-vectors stop paying off once the diameter dwarfs the n^2 pair count
_DENSE_LIMIT = 1 << 22


def _sparse(A: FiniteSet) -> bool:
    return A.diameter > _DENSE_LIMIT and A.diameter > 64 * len(A) ** 2


def _sum_bits(A: FiniteSet) -> int:
    # sums relative to 2*min
    lo = A.min
    b = _bits(A, lo)
    acc = 0
    for a in A.elements:
        acc |= b << (a - lo)
    return acc


def _posdiff_bits(A: FiniteSet) -> int:
    """Bit i set iff i is a non-negative difference (bit 0 always set)."""
    lo = A.min
    b = _bits(A, lo)
    acc = 0
    for a in A.elements:
        acc |= b >> (a - lo)
    return acc


def _pos_diff_values(A: FiniteSet) -> set[int]:
    els = A.elements
    return {els[j] - els[i] for i in range(len(els)) for j in range(i + 1, len(els))}


def sumset(A: FiniteSet) -> FiniteSet:
    assert 2 * A.max <= 2**63 - 1
    if _sparse(A):
        return FiniteSet.of(naive_sumset(A.elements))
    return FiniteSet(_members(_sum_bits(A), 2 * A.min))


def positive_differences(A: FiniteSet) -> tuple[int, ...]:
    if _sparse(A):
        return tuple(sorted(_pos_diff_values(A)))
    return _members(_posdiff_bits(A) >> 1, 1)


def diffset(A: FiniteSet) -> FiniteSet:
    """A - A shifted by +diameter so every element is non-negative.

    Use ``signed_diffset`` for the actual signed values.
    """
    pos = positive_differences(A)
    w = A.diameter
    return FiniteSet(tuple(w - d for d in reversed(pos)) + (w,) + tuple(w + d for d in pos))


def signed_diffset(A: FiniteSet) -> tuple[int, ...]:
    pos = positive_differences(A)
    return tuple(-d for d in reversed(pos)) + (0,) + pos


def sum_card(A: FiniteSet) -> int:
    if _sparse(A):
        return len(naive_sumset(A.elements))
    return _sum_bits(A).bit_count()


def _distinct_pos(A: FiniteSet) -> int:
    if _sparse(A):
        return len(_pos_diff_values(A))
    return _posdiff_bits(A).bit_count() - 1


def diff_card(A: FiniteSet) -> int:
    return 2 * _distinct_pos(A) + 1


def classify(A: FiniteSet) -> Classification:
    return Classification.from_cards(sum_card(A), diff_card(A))


def diff_stats(A: FiniteSet) -> DiffStats:
    n = len(A)
    dpos = _distinct_pos(A)
    return DiffStats(n, dpos, n * (n - 1) // 2 - dpos)


def naive_sumset(values: Iterable[int]) -> set[int]:
    vals = list(values)
    return {a + b for a in vals for b in vals}


def naive_diffset(values: Iterable[int]) -> set[int]:
    vals = list(values)
    return {a - b for a in vals for b in vals}


def naive_classify(values: Iterable[int]) -> Classification:
    vals = list(values)
    return Classification.from_cards(len(naive_sumset(vals)), len(naive_diffset(vals)))


# ---------------------------------------------------------------------------
# structure


def normalize_affine(A: FiniteSet) -> FiniteSet:
    """Canonical representative of the affine class of A: min 0, gap gcd 1,
    gap vector lexicographically no larger than its reversal."""
    if len(A) < 2:
        raise ValueError("normalize_affine needs at least two elements")
    gaps = A.gaps
    g = math.gcd(*gaps)
    gaps = tuple(x // g for x in gaps)
    rev = gaps[::-1]
    if rev < gaps:
        gaps = rev
    return GapForm(0, gaps).to_set()


def is_canonical_gaps(gaps: tuple[int, ...]) -> bool:
    return math.gcd(*gaps) == 1 and gaps <= gaps[::-1]


def is_symmetric(A: FiniteSet) -> Optional[int]:
    """Return the centre ``a`` with a - A = A, or None."""
    a = A.min + A.max
    gaps = A.gaps
    return a if gaps == gaps[::-1] else None


def contains_ap(A: FiniteSet, k: int) -> bool:
    """True iff some k elements of A form an arithmetic progression."""
    if k < 3:
        raise ValueError("k must be at least 3")
    els = A.elements
    if len(els) < k:
        return False
    look = A._lookup
    top = els[-1]
    for i, j in combinations(range(len(els)), 2):
        a, step = els[i], els[j] - els[i]
        if a + (k - 1) * step > top:
            continue
        if all(a + t * step in look for t in range(2, k)):
            return True
    return False


def classification_json(A: FiniteSet) -> dict:
    c = classify(A)
    return {
        "set": list(A.elements),
        "spohn": str(to_spohn(A)),
        "sum_card": c.sum_card,
        "diff_card": c.diff_card,
        "margin": c.margin,
        "verdict": c.verdict.value,
    }
