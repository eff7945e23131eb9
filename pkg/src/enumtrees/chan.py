"""Chan's Moebius forests and a checker for the partitions they claim.

``gk_family(k)`` enumerates all positive rationals from ``2k - 1`` roots,
``hk_family(k)`` enumerates the positive rationals ``p/q`` with ``pq`` even
from ``2k`` roots.  :func:`verify_partition` expands every root's tree and
compares the result against the target set at a height cutoff.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import _config
from .core import BudgetExceeded, PreconditionError, format_rational
from .monoid import L, R, Mat2

TARGETS = ("all-positive", "even-product")


def is_even_rational(q) -> bool:
    q = Fraction(q)
    if q <= 0:
        raise PreconditionError("not a positive rational")
    return (q.numerator * q.denominator) % 2 == 0


def in_target(target: str, q: Fraction) -> bool:
    if q <= 0:
        return False
    if target == "all-positive":
        return True
    if target == "even-product":
        return is_even_rational(q)
    raise PreconditionError(f"unknown target {target!r}")


@dataclass(frozen=True)
class ForestSpec:
    maps: tuple[Mat2, ...]
    roots: tuple[Fraction, ...]
    target: str
    name: str = ""

    def __post_init__(self):
        if self.target not in TARGETS:
            raise PreconditionError(f"unknown target {self.target!r}")
        for m in self.maps:
            if min(m.entries) < 0 or m.det == 0:
                raise PreconditionError(f"forest maps need nonnegative entries and det != 0: {m}")
        if len(set(self.roots)) != len(self.roots):
            raise PreconditionError("forest roots must be pairwise distinct")
        if any(Fraction(r) <= 0 for r in self.roots):
            raise PreconditionError("forest roots must be positive rationals")


def calkin_wilf_spec() -> ForestSpec:
    return ForestSpec((L, R), (Fraction(1),), "all-positive", "CW")


def gk_family(k: int) -> ForestSpec:
    if k < 2:
        raise PreconditionError("G_k needs k >= 2")
    up = [Mat2(i, i - 1, i + 1, i) for i in range(1, k)]
    mid = [Mat2(k, k - 1, k, k), Mat2(k, k, k - 1, k)]
    down = [Mat2(i, i + 1, i - 1, i) for i in range(k - 1, 0, -1)]
    roots = (
        [Fraction(i, i + 1) for i in range(1, k)]
        + [Fraction(1)]
        + [Fraction(i + 1, i) for i in range(k - 1, 0, -1)]
    )
    return ForestSpec(tuple(up + mid + down), tuple(roots), "all-positive", f"G{k}")


def hk_family(k: int) -> ForestSpec:
    """``H_k`` with the descending half mirrored from the ascending one."""
    if k < 1:
        raise PreconditionError("H_k needs k >= 1")
    up = [Mat2(i, i - 1, i + 1, i) for i in range(1, k + 1)]
    pivot = [Mat2(k + 1, k, k, k + 1)]
    down = [Mat2(i, i + 1, i - 1, i) for i in range(k, 0, -1)]
    roots = [Fraction(i, i + 1) for i in range(1, k + 1)] + [
        Fraction(i + 1, i) for i in range(k, 0, -1)
    ]
    return ForestSpec(tuple(up + pivot + down), tuple(roots), "even-product", f"H{k}")


def apply(m: Mat2, p: int, q: int) -> tuple[int, int]:
    a = m.a * p + m.b * q
    b = m.c * p + m.d * q
    g = gcd(a, b)
    return a // g, b // g


def shrink_ratio(spec: ForestSpec) -> Fraction:
    """Lower bound on ``(p'+q')/(p+q)`` over one step of any forest map.

    The reduced image of ``p/q`` under ``[[a,b],[c,d]]`` has numerator plus
    denominator at least ``min(a+c, b+d) * (p+q) / |det|``, since the gcd
    removed divides the determinant.
    """
    return min(Fraction(min(m.a + m.c, m.b + m.d), abs(m.det)) for m in spec.maps)


def expand_forest(spec: ForestSpec, height_bound: int, depth_bound: int, budget: int | None = None):
    """All nodes of height <= height_bound reachable within depth_bound.

    Yields ``(root_index, word, value)``; words are tuples of map indices with
    the last-applied map first.  Subtrees are cut once no descendant can come
    back under the height cutoff (see :func:`shrink_ratio`).
    """
    budget = _config.node_budget() if budget is None else budget
    rho = shrink_ratio(spec)
    limit = 2 * height_bound
    visited = 0
    for j, root in enumerate(spec.roots):
        root = Fraction(root)
        stack = [((), root.numerator, root.denominator)]
        while stack:
            word, p, q = stack.pop()
            visited += 1
            if visited > budget:
                raise BudgetExceeded(f"budget exceeded: more than {budget} forest nodes")
            if max(p, q) <= height_bound:
                yield j, word, Fraction(p, q)
            remaining = depth_bound - len(word)
            if remaining == 0:
                continue
            for i in range(len(spec.maps) - 1, -1, -1):
                p2, q2 = apply(spec.maps[i], p, q)
                floor_sum = (p2 + q2) * (rho ** (remaining - 1) if rho < 1 else 1)
                if floor_sum > limit:
                    continue
                stack.append(((i,) + word, p2, q2))


def target_values(target: str, height_bound: int) -> list[Fraction]:
    out = []
    for q in range(1, height_bound + 1):
        for p in range(1, height_bound + 1):
            if gcd(p, q) == 1:
                x = Fraction(p, q)
                if in_target(target, x):
                    out.append(x)
    out.sort()
    return out


@dataclass
class PartitionReport:
    duplicates: list = field(default_factory=list)
    foreign: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    missing_inconclusive: list = field(default_factory=list)
    orbit_counts: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not (self.duplicates or self.foreign or self.missing or self.missing_inconclusive)

    def to_dict(self) -> dict:
        return {
            "duplicates": [
                {"value": format_rational(v), "witnesses": [[j, list(w)] for j, w in ws]}
                for v, ws in self.duplicates
            ],
            "foreign": [format_rational(v) for v in self.foreign],
            "missing": [format_rational(v) for v in self.missing],
            "missing_inconclusive": [format_rational(v) for v in self.missing_inconclusive],
            "orbit_counts": list(self.orbit_counts),
            "parameters": dict(self.parameters),
        }


def _collect(spec, height_bound, depth_bound, budget):
    seen: dict[Fraction, list] = {}
    counts = [0] * len(spec.roots)
    for j, word, x in expand_forest(spec, height_bound, depth_bound, budget):
        seen.setdefault(x, []).append((j, word))
        counts[j] += 1
    return seen, counts


def verify_partition(spec: ForestSpec, height_bound: int, depth_bound: int, budget: int | None = None) -> PartitionReport:
    if height_bound < 1 or depth_bound < 1:
        raise PreconditionError("height and depth bounds must be >= 1")
    seen, counts = _collect(spec, height_bound, depth_bound, budget)
    report = PartitionReport(
        orbit_counts=counts,
        parameters={
            "family": spec.name,
            "target": spec.target,
            "height": height_bound,
            "depth": depth_bound,
            "maps": [str(m) for m in spec.maps],
            "roots": [format_rational(r) for r in spec.roots],
        },
    )
    for x in sorted(seen):
        hits = seen[x]
        if len(hits) > 1:
            ordered = sorted(hits, key=lambda h: (h[0], len(h[1]), h[1]))
            report.duplicates.append((x, ordered))
        if not in_target(spec.target, x):
            report.foreign.append(x)
    missing = [x for x in target_values(spec.target, height_bound) if x not in seen]
    if missing:
        deeper, _ = _collect(spec, height_bound, 2 * depth_bound, budget)
        for x in missing:
            (report.missing_inconclusive if x in deeper else report.missing).append(x)
    return report
