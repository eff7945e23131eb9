"""Orbits of finitely many rational maps over the free monoid on their indices.

A word is a tuple of map indices, outermost map first: the node for word
``(i, j)`` carries ``f_i(f_j(x0))``.  Expansions list nodes by word length and
lexicographically within a length.

The growth machinery assumes a constant ``c >= 1`` with
``h(f_i(x)) >= 2 h(x) - c`` for every map and every point.  Outside the
exceptional set ``S = {h <= 2c}`` each map then multiplies log-height by at
least 3/2, which is what :func:`orbit_height_census` uses to truncate safely.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass, field

from . import _config, _kernels
from .core import BudgetExceeded, PreconditionError, ProjPoint
from .heights import count_points_table, height, log_height, points_up_to
from .maps import RationalMap, eval_map

GROWTH = 1.5
LOG_GROWTH = math.log(GROWTH)
DEFAULT_SCAN_BOUND = 1000


class EscapeNotReached(BudgetExceeded):
    pass


@dataclass(frozen=True)
class Family:
    maps: tuple[RationalMap, ...]
    x0: ProjPoint
    c: float | None = None
    mode: str | None = None  # "analytic" | "empirical" when c is set

    def __post_init__(self):
        if not self.maps:
            raise PreconditionError("a family needs at least one map")
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.c is not None and self.mode not in ("analytic", "empirical"):
            raise PreconditionError("a certified constant needs mode 'analytic' or 'empirical'")

    @property
    def r(self) -> int:
        return len(self.maps)

    @property
    def min_degree(self) -> int:
        return min(f.degree for f in self.maps)

    def with_certified_c(self, c=None, scan_bound=DEFAULT_SCAN_BOUND) -> "Family":
        value, mode = certify_c(self.maps, c, scan_bound)
        return Family(self.maps, self.x0, value, mode)


@dataclass(frozen=True)
class OrbitNode:
    word: tuple[int, ...]
    value: ProjPoint

    @property
    def norm(self) -> int:
        return len(self.word)


def format_word(word) -> str:
    return ".".join(str(i) for i in word) if word else "e"


# ---------------------------------------------------------------------------
# the constant c
# ---------------------------------------------------------------------------

def analytic_c(f: RationalMap) -> float | None:
    """Exact constant for ``(a/b) x^e`` with ``|e| >= 2``.

    ``H(f(x)) >= H(x)^|e| / max(|a|, |b|)``, so ``c = log max(|a|, |b|)``
    works for the doubling inequality.  None for any other map.
    """
    mono = f.monomial()
    if mono is None:
        return None
    a, b, e = mono
    if abs(e) < 2:
        return None
    return math.log(max(abs(a), abs(b)))


def _scan_python(f: RationalMap, bound: int):
    best = (-math.inf, None)
    for p in points_up_to(bound):
        m = 2 * log_height(p) - log_height(eval_map(f, p))
        if m > best[0]:
            best = (m, p)
    return best


def empirical_c(f: RationalMap, bound: int = DEFAULT_SCAN_BOUND) -> tuple[float, ProjPoint]:
    """Largest ``2h(x) - h(f(x))`` over all ``x`` with ``H(x) <= bound``."""
    numer, denom = f.homogeneous()
    if _kernels.int64_safe(numer + denom, bound, f.degree):
        m, x0, x1 = _kernels.height_margin_scan(numer, denom, bound)
        return m, ProjPoint(x0, x1)
    return _scan_python(f, bound)


def certify_c(maps, c=None, scan_bound=DEFAULT_SCAN_BOUND) -> tuple[float, str]:
    """Constant ``c >= 1`` for the doubling inequality, with its provenance.

    Analytic when every map is a monomial of degree >= 2 (and the requested
    ``c``, if any, is at least the exact bound); otherwise the scan over
    ``H(x) <= scan_bound`` decides and the result is tagged empirical.
    """
    if min(f.degree for f in maps) < 2:
        raise PreconditionError("the doubling inequality needs every map of degree >= 2")
    exact = [analytic_c(f) for f in maps]
    if all(v is not None for v in exact):
        need = max(exact)
        if c is None or c >= need:
            return max(need if c is None else c, 1.0), "analytic"
    worst, witness = -math.inf, None
    for f in maps:
        m, x = empirical_c(f, scan_bound)
        if m > worst:
            worst, witness = m, (f, x)
    if c is None:
        return max(worst, 1.0), "empirical"
    if worst > c + 1e-12:
        f, x = witness
        raise PreconditionError(
            f"c = {c} fails for {f} at x = {x}: 2h(x) - h(f(x)) = {worst:.6g}"
        )
    return max(c, 1.0), "empirical"


# ---------------------------------------------------------------------------
# expansion and injectivity
# ---------------------------------------------------------------------------

def tree_size(r: int, depth: int) -> int:
    if r == 1:
        return depth + 1
    return (r ** (depth + 1) - 1) // (r - 1)


def _check_budget(r, depth, budget):
    budget = _config.node_budget() if budget is None else budget
    if tree_size(r, depth) > budget:
        raise BudgetExceeded(f"budget exceeded: {tree_size(r, depth)} nodes > {budget}")


def iter_layers(fam: Family, depth: int, budget: int | None = None):
    """Yield the list of nodes of each word length 0..depth, lexicographic."""
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    _check_budget(fam.r, depth, budget)
    layer = [OrbitNode((), fam.x0)]
    yield layer
    for _ in range(depth):
        layer = [
            OrbitNode((i,) + node.word, eval_map(f, node.value))
            for i, f in enumerate(fam.maps)
            for node in layer
        ]
        yield layer


def expand_orbit(fam: Family, depth: int, budget: int | None = None) -> list[OrbitNode]:
    return [node for layer in iter_layers(fam, depth, budget) for node in layer]


@dataclass
class InjectivityReport:
    depth: int
    nodes: int
    collision: tuple | None = None  # (first word, second word, value)

    @property
    def injective(self) -> bool:
        return self.collision is None

    def to_dict(self) -> dict:
        out = {"depth": self.depth, "nodes": self.nodes, "injective": self.injective}
        if self.collision is not None:
            w1, w2, v = self.collision
            out["collision"] = {"words": [list(w1), list(w2)], "value": str(v)}
        return out

    def __str__(self):
        if self.collision is None:
            return f"injective to depth {self.depth} ({self.nodes} nodes)"
        w1, w2, v = self.collision
        return f"collision: words {format_word(w1)} and {format_word(w2)} both give {v}"


def check_injectivity(fam: Family, depth: int, budget: int | None = None) -> InjectivityReport:
    """First repeated value in expansion order, which is the shortlex-least collision."""
    seen: dict[ProjPoint, tuple] = {}
    count = 0
    for layer in iter_layers(fam, depth, budget):
        for node in layer:
            count += 1
            first = seen.setdefault(node.value, node.word)
            if first != node.word:
                return InjectivityReport(depth, count, (first, node.word, node.value))
    return InjectivityReport(depth, count)


# ---------------------------------------------------------------------------
# exceptional set and escape depth
# ---------------------------------------------------------------------------

def _require_c(c):
    if c is None:
        raise PreconditionError("this check needs a certified constant c")
    if c < 1:
        raise PreconditionError("c must be >= 1")


def in_exceptional(p: ProjPoint, c: float) -> bool:
    return log_height(p) <= 2 * c


def exceptional_set(c: float, budget: int | None = None) -> list[ProjPoint]:
    _require_c(c)
    budget = _config.node_budget() if budget is None else budget
    if 2 * c > math.log(budget):
        raise BudgetExceeded(f"budget exceeded: exceptional set for c = {c} is too large")
    cutoff = math.floor(math.exp(2 * c))
    if 4 * cutoff**2 > 4 * budget and count_points_table(cutoff)[-1] > budget:
        raise BudgetExceeded(f"budget exceeded: exceptional set for c = {c} is too large")
    return points_up_to(cutoff)


def find_escape_depth(fam: Family, depth_budget: int, budget: int | None = None) -> int:
    """Least ``n0`` with every node of length ``n0..depth_budget`` outside S."""
    _require_c(fam.c)
    inj = check_injectivity(fam, depth_budget, budget)
    if not inj.injective:
        raise PreconditionError(f"family is not injective: {inj}")
    last_inside = -1
    for n, layer in enumerate(iter_layers(fam, depth_budget, budget)):
        if any(in_exceptional(node.value, fam.c) for node in layer):
            last_inside = n
    if last_inside == depth_budget:
        raise EscapeNotReached(f"escape not reached within depth {depth_budget}")
    return last_inside + 1


# ---------------------------------------------------------------------------
# growth
# ---------------------------------------------------------------------------

@dataclass
class GrowthReport:
    n0: int
    depth: int
    nodes_checked: int = 0
    steps_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n0": self.n0,
            "depth": self.depth,
            "nodes_checked": self.nodes_checked,
            "steps_checked": self.steps_checked,
            "passed": self.passed,
            "violations": self.violations,
        }


def growth_check(fam: Family, depth: int, n0: int | None = None, budget: int | None = None) -> GrowthReport:
    """Check ``h(g(x0)) > 1.5^(|g| - n0)`` past ``n0`` and the one-step 3/2 law outside S."""
    _require_c(fam.c)
    if n0 is None:
        n0 = find_escape_depth(fam, depth, budget)
    report = GrowthReport(n0, depth)
    layers = list(iter_layers(fam, depth, budget))
    for n, layer in enumerate(layers):
        for node in layer:
            h = log_height(node.value)
            if n > n0:
                report.nodes_checked += 1
                if not h > GROWTH ** (n - n0):
                    report.violations.append(
                        {"kind": "exponential", "word": list(node.word), "h": h, "bound": GROWTH ** (n - n0)}
                    )
            if n < depth and not in_exceptional(node.value, fam.c):
                for i, f in enumerate(fam.maps):
                    hc = log_height(eval_map(f, node.value))
                    report.steps_checked += 1
                    if hc < GROWTH * h:
                        report.violations.append(
                            {"kind": "step", "word": [i] + list(node.word), "h": hc, "bound": GROWTH * h}
                        )
    return report


def closure_sample(fam: Family, n0: int, max_len: int, samples: int, seed: int = 0) -> list:
    """Random words of length ``n0..max_len``; return those whose value lies in S.

    Every returned word is a counterexample to the closure of the complement
    of S under the family, so a valid constant yields an empty list.
    """
    _require_c(fam.c)
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        n = rng.randint(n0, max_len)
        word = tuple(rng.randrange(fam.r) for _ in range(n))
        x = fam.x0
        for i in reversed(word):
            x = eval_map(fam.maps[i], x)
        if in_exceptional(x, fam.c):
            bad.append(list(word))
    return bad


# ---------------------------------------------------------------------------
# census and density trace
# ---------------------------------------------------------------------------

def required_depth(n0: int, log_bound: float) -> int:
    return n0 + math.ceil(max(log_bound, 0.0) / LOG_GROWTH)


def _pruned_nodes(fam: Family, log_bound: float, depth: int, budget: int | None) -> list[OrbitNode]:
    """All nodes with ``h <= log_bound`` and length <= depth.

    A node outside S above the bound is cut together with its subtree:
    the growth law only raises log-heights from there on.
    """
    budget = _config.node_budget() if budget is None else budget
    out = []
    visited = 0
    stack = [((), fam.x0)]
    while stack:
        word, x = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"budget exceeded: more than {budget} orbit nodes")
        h = log_height(x)
        if h <= log_bound:
            out.append(OrbitNode(word, x))
        elif not in_exceptional(x, fam.c):
            continue
        if len(word) < depth:
            for i in range(fam.r - 1, -1, -1):
                stack.append(((i,) + word, eval_map(fam.maps[i], x)))
    return out


@dataclass(frozen=True)
class CensusResult:
    log_bound: float
    count: int
    bound: float
    n0: int
    k: int | None
    c_prime: int | None
    depth_budget: int

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound

    def to_dict(self) -> dict:
        return {
            "B": self.log_bound,
            "count": self.count,
            "bound": self.bound,
            "n0": self.n0,
            "k": self.k,
            "c_prime": self.c_prime,
            "depth_budget": self.depth_budget,
            "within_bound": self.within_bound,
        }


def census_bound(r: int, n0: int, log_bound: float) -> tuple[float, int | None, int | None]:
    """Word-count bound for ``h <= B``: ``r^(n0+1) * B^k``, or ``floor(C) + 1`` when r = 1."""
    if r == 1:
        return float(math.floor(n0 + math.log(log_bound) / LOG_GROWTH) + 1), None, None
    k = math.ceil(math.log(r) / LOG_GROWTH)
    c_prime = r ** (n0 + 1)
    return c_prime * log_bound**k, k, c_prime


def orbit_height_census(fam: Family, log_bound: float, depth_budget: int, n0: int | None = None,
                        budget: int | None = None) -> CensusResult:
    _require_c(fam.c)
    if log_bound < 1:
        raise PreconditionError("B must be >= 1")
    if n0 is None:
        n0 = find_escape_depth(fam, depth_budget, budget)
    if depth_budget < required_depth(n0, math.log(log_bound)):
        raise BudgetExceeded(
            f"budget insufficient for soundness: depth {depth_budget} < "
            f"{required_depth(n0, math.log(log_bound))}"
        )
    count = len(_pruned_nodes(fam, log_bound, depth_budget, budget))
    bound, k, c_prime = census_bound(fam.r, n0, log_bound)
    return CensusResult(log_bound, count, bound, n0, k, c_prime, depth_budget)


@dataclass(frozen=True)
class TraceRow:
    cutoff: int
    orbit_count: int
    total_count: int

    @property
    def ratio(self) -> float:
        return self.orbit_count / self.total_count

    def row(self) -> dict:
        return {"N": self.cutoff, "orbit": self.orbit_count, "total": self.total_count, "ratio": self.ratio}


def sample_cutoffs(n_max: int, samples: int) -> list[int]:
    """Geometrically spaced cutoffs ``n_max^(j/samples)``, deduplicated, ending at n_max."""
    if n_max < 2 or samples < 1:
        raise PreconditionError("need Nmax >= 2 and samples >= 1")
    out = sorted({max(2, round(n_max ** (j / samples))) for j in range(1, samples + 1)} | {n_max})
    return out


def orbit_nodes_up_to(fam: Family, n_max: int, n0: int | None = None, budget: int | None = None) -> list[OrbitNode]:
    """Every orbit node with ``H <= n_max``; complete because of the growth law."""
    _require_c(fam.c)
    log_bound = max(math.log(n_max), 1.0)
    if n0 is None:
        n0 = _escape_depth_auto(fam, budget)
    depth = required_depth(n0, math.log(log_bound))
    return [node for node in _pruned_nodes(fam, log_bound, depth, budget) if height(node.value) <= n_max]


def _escape_depth_auto(fam: Family, budget: int | None) -> int:
    """Escape depth found by growing the depth budget until S is left behind."""
    depth = 1
    while True:
        try:
            return find_escape_depth(fam, depth, budget)
        except EscapeNotReached:
            depth += 1
            _check_budget(fam.r, depth, budget)


def orbit_density_trace(fam: Family, n_max: int, samples: int, budget: int | None = None) -> list[TraceRow]:
    if fam.min_degree < 2:
        raise PreconditionError("density trace needs every map of degree >= 2")
    _require_c(fam.c)
    cutoffs = sample_cutoffs(n_max, samples)
    heights = sorted(height(node.value) for node in orbit_nodes_up_to(fam, n_max, budget=budget))
    totals = count_points_table(n_max)
    return [TraceRow(n, bisect_right(heights, n), int(totals[n])) for n in cutoffs]
