"""Parametric six-element families that are never sum-dominant, plus the
AP-with-extras constructions.

Every family is a gap template over the parameters ``d``, ``a``, ``b``.
Templates are linear: each gap is a tuple of coefficients on (d, a, b).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .setcore import FiniteSet, GapForm, classify

# coefficient vectors on (d, a, b)
D, A, B = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def _lin(*terms):
    out = [0, 0, 0]
    for coef, basis in terms:
        for i in range(3):
            out[i] += coef * basis[i]
    return tuple(out)


_a_b = _lin((1, A), (1, B))
_2a = _lin((2, A))
_2d = _lin((2, D))
_2ab = _lin((2, A), (1, B))


@dataclass(frozen=True)
class FamilySpec:
    id: int
    arity: tuple[str, ...]
    gap_template: tuple[tuple[int, int, int], ...]
    constraint: Optional[str] = None

    def gaps(self, d: int, a: int, b: int) -> tuple[int, ...]:
        return tuple(c[0] * d + c[1] * a + c[2] * b for c in self.gap_template)

    def template_str(self) -> str:
        def fmt(c):
            parts = []
            for coef, name in zip(c, "dab"):
                if coef == 1:
                    parts.append(name)
                elif coef:
                    parts.append(f"{coef}{name}")
            return "+".join(parts)

        return "(0|" + ",".join(fmt(c) for c in self.gap_template) + ")"


FAMILIES: dict[int, FamilySpec] = {
    1: FamilySpec(1, ("d", "a", "b"), (D, D, _2d, A, B), "a+b=d"),
    2: FamilySpec(2, ("d", "a"), (D, D, _2d, D, A)),
    3: FamilySpec(3, ("d", "a"), (D, D, _2d, A, D)),
    4: FamilySpec(4, ("d", "a"), (_2d, D, D, A, _2d)),
    5: FamilySpec(5, ("a", "b"), (A, B, B, A, A)),
    6: FamilySpec(6, ("a", "b"), (_a_b, A, A, B, _a_b)),
    7: FamilySpec(7, ("a", "b"), (_a_b, A, A, B, A)),
    8: FamilySpec(8, ("a", "b"), (A, _2a, A, A, B)),
    9: FamilySpec(9, ("a", "b"), (_a_b, A, _a_b, A, B)),
    10: FamilySpec(10, ("a", "b"), (_a_b, _2ab, _a_b, A, B)),
    11: FamilySpec(11, ("a", "b"), (A, B, A, _a_b, A)),
    12: FamilySpec(12, ("a", "b"), (A, B, _a_b, A, A)),
    13: FamilySpec(13, ("a", "b"), (_2ab, A, A, B, A)),
    14: FamilySpec(14, ("a", "b"), (_a_b, A, A, B, _2a)),
    15: FamilySpec(15, ("a", "b"), (A, _a_b, A, B, A)),
}


class FamilyConstraintError(ValueError):
    pass


def build_family(id: int, d: int = 1, a: int = 1, b: int = 1) -> FiniteSet:
    """Instantiate family ``id`` with base 0. Parameters the family does not use are ignored."""
    spec = FAMILIES.get(id)
    if spec is None:
        raise ValueError(f"unknown family id {id}; expected 1..15")
    params = {"d": d, "a": a, "b": b}
    for name in spec.arity:
        if params[name] < 1:
            raise FamilyConstraintError(f"S{id}: parameter {name} must be positive, got {params[name]}")
    if id == 1 and a + b != d:
        raise FamilyConstraintError(f"S1 requires a+b=d, got a={a}, b={b}, d={d}")
    return GapForm(0, spec.gaps(d, a, b)).to_set()


def family_grid(id: int, pmax: int):
    """Yield (d, a, b) parameter tuples for family ``id`` with used parameters in 1..pmax."""
    spec = FAMILIES[id]
    if id == 1:
        for d in range(2, pmax + 1):
            for a in range(1, d):
                yield (d, a, d - a)
        return
    names = spec.arity
    for vals in product(range(1, pmax + 1), repeat=len(names)):
        p = dict(zip(names, vals))
        yield (p.get("d", 1), p.get("a", 1), p.get("b", 1))


@dataclass
class FamilyReport:
    id: int
    grid: str
    instances_checked: int = 0
    violations: list[tuple[int, int, int]] = field(default_factory=list)
    max_margin_seen: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        spec = FAMILIES[self.id]
        return {
            "id": self.id,
            "template": spec.template_str(),
            "constraint": spec.constraint,
            "grid": self.grid,
            "instances_checked": self.instances_checked,
            "violations": [
                {name: v for name, v in zip("dab", t) if name in spec.arity} for t in self.violations
            ],
            "max_margin_seen": self.max_margin_seen,
        }


def verify_family(id: int, pmax: int) -> FamilyReport:
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    spec = FAMILIES[id]
    rep = FamilyReport(id, f"{','.join(spec.arity)} in 1..{pmax}" + (f" with {spec.constraint}" if spec.constraint else ""))
    for d, a, b in family_grid(id, pmax):
        c = classify(build_family(id, d, a, b))
        rep.instances_checked += 1
        if rep.max_margin_seen is None or c.margin > rep.max_margin_seen:
            rep.max_margin_seen = c.margin
        if c.margin > 0:
            rep.violations.append((d, a, b))
    rep.violations.sort()
    return rep


def _verify_one(args):
    return verify_family(*args)


def verify_all_families(pmax: int, workers: int = 1) -> list[FamilyReport]:
    jobs = [(i, pmax) for i in sorted(FAMILIES)]
    if workers <= 1:
        return [verify_family(*j) for j in jobs]
    with ProcessPoolExecutor(workers) as ex:
        return list(ex.map(_verify_one, jobs))


def build_nathanson_star(k: int) -> FiniteSet:
    """{0,2} U {3,7,...,4k-1} U {4k,4k+2}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return FiniteSet.of([0, 2, *range(3, 4 * k, 4), 4 * k, 4 * k + 2])


def build_ap_plus(ap_start: int, ap_step: int, ap_len: int, extras=()) -> FiniteSet:
    if ap_len < 1 or ap_step < 1:
        raise ValueError("ap_len and ap_step must be positive")
    ap = {ap_start + i * ap_step for i in range(ap_len)}
    extras = set(extras)
    clash = sorted(ap & extras)
    if clash:
        raise ValueError(f"extras overlap the progression at {clash}")
    return FiniteSet.of(ap | extras)
