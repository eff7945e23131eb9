"""Acceptance gate: one test per criterion, summarised as PASS/FAIL lines."""
import math
import random
import time
from fractions import Fraction
from math import gcd

import pytest

import oracles
from enumtrees import heights, monoid, orbit, tree
from enumtrees.chan import gk_family, hk_family, verify_partition
from enumtrees.core import ProjPoint
from enumtrees.maps import moebius_height, moebius_inverse, parse_family
from enumtrees.monoid import Mat2

SEED = 20240101


@pytest.mark.criterion(1, "free-monoid roundtrip decompose(compose_word(w)) == w")
def test_criterion_01_roundtrip():
    t0 = time.perf_counter()
    words = list(monoid.words_up_to(10))
    assert len(words) == 2**11 - 1
    rng = random.Random(SEED)
    words += ["".join(rng.choice("LR") for _ in range(rng.randint(0, 30))) for _ in range(10_000)]
    failures = [w for w in words if monoid.decompose(monoid.compose_word(w)) != w]
    elapsed = time.perf_counter() - t0
    assert failures == []
    assert elapsed < 5.0


@pytest.mark.criterion(2, "Calkin-Wilf bijection at desk scale")
def test_criterion_02_tree_bijection():
    first = tree.bfs_list(2**15)
    assert len(set(first)) == 2**15
    assert first == oracles.bfs_by_queue(2**15)
    for q in range(1, 51):
        for p in range(1, 51):
            if gcd(p, q) == 1:
                x = Fraction(p, q)
                n = tree.rational_to_index(x)
                assert n == oracles.index_by_parent_walk(x)
                assert tree.index_to_rational(n) == x
    for n in range(10_000):
        assert first[n].denominator == first[n + 1].numerator


@pytest.mark.criterion(3, "fusc equals the hyperbinary brute force for n <= 2000")
def test_criterion_03_fusc():
    table = tree.fusc_values(2000)
    for n in range(2001):
        b = oracles.hyperbinary_count(n)
        assert tree.fusc(n) == b
        assert table[n] == b


@pytest.mark.criterion(4, "Newman iteration equals the BFS listing for n <= 10^4")
def test_criterion_04_newman():
    ref = oracles.bfs_by_queue(10_001)
    x = Fraction(1)
    for n in range(10_001):
        assert x == ref[n]
        x = tree.newman_next(x)


@pytest.mark.criterion(5, "Diophantine solutions: exhaustive agreement and random identities")
def test_criterion_05_diophantine():
    for p in range(1, 61):
        for q in range(1, 61):
            if gcd(p, q) == 1:
                assert oracles.diophantine_search(p, q) == [monoid.solve_diophantine(p, q)]
    rng = random.Random(SEED)
    done = 0
    while done < 10_000:
        p, q = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if gcd(p, q) != 1:
            continue
        a, b, c, d = monoid.solve_diophantine(p, q)
        assert min(a, b, c, d) >= 0
        assert (a + b, c + d, a * d - b * c) == (p, q, 1)
        done += 1


@pytest.mark.criterion(6, "bounded-height counts: brute force and 12/pi^2 asymptotic")
def test_criterion_06_counting():
    brute = oracles.point_counts_brute(200)
    table = heights.count_points_table(200)
    for n in range(1, 201):
        assert heights.count_points_up_to(n).total == brute[n] == table[n]
    t0 = time.perf_counter()
    c = heights.count_points_up_to(10**4).total
    elapsed = time.perf_counter() - t0
    target = 12 / math.pi**2
    assert abs(c / 1e8 - target) / target <= 0.01
    assert elapsed <= 10.0


@pytest.mark.criterion(7, "Schanuel constant: 12/pi^2 over Q and agreement of both forms")
def test_criterion_07_schanuel():
    q_field = heights.FieldInvariants(1, 0, 1, 1, 1.0, 2, math.pi**2 / 6)
    assert heights.schanuel_constant(1, q_field) == pytest.approx(12 / math.pi**2, rel=1e-10)
    catalan = 0.915965594177219015054603514932
    fields = [
        (1, q_field),
        (2, heights.FieldInvariants(0, 1, -4, 1, 1.0, 4, math.pi**2 / 6 * catalan)),
        (2, heights.FieldInvariants(2, 0, 8, 1, math.log(1 + math.sqrt(2)), 2, 1.8)),
        (2, heights.FieldInvariants(0, 1, -3, 1, 1.0, 6, 1.3)),
        (3, heights.FieldInvariants(1, 1, -23, 1, 0.2812398, 2, 1.1)),
    ]
    for deg, inv in fields:
        rep = heights.schanuel_report(deg, inv, heights.class_number_residue(inv))
        assert rep.discrepancy <= 1e-10


@pytest.mark.criterion(8, "height densities at N = 2000")
def test_criterion_08_density():
    pos = heights.density_estimate(heights.positive_mask, 2000).ratio
    unit = heights.density_estimate(heights.unit_interval_mask, 2000).ratio
    even = heights.density_estimate(heights.even_mask, 2000).ratio
    assert abs(pos - 0.5) <= 0.01
    assert abs(unit - 0.25) <= 0.01
    assert abs(even - 1 / 3) <= 0.02
    # the vectorised masks against a pointwise enumeration
    pointwise = {
        heights.positive_mask: lambda x: x.x0 > 0 and x.x1 > 0,
        heights.unit_interval_mask: lambda x: x.x1 > 0 and 0 <= x.x0 <= x.x1,
        heights.even_mask: lambda x: x.x0 > 0 and x.x1 > 0 and (x.x0 * x.x1) % 2 == 0,
    }
    for mask, pred in pointwise.items():
        fast = heights.density_estimate(mask, 150)
        slow = heights.density_estimate(pred, 150, vectorized=False)
        assert fast.count == slow.count


@pytest.mark.criterion(9, "Chan forests partition their targets at height 40")
def test_criterion_09_chan():
    for spec in [gk_family(2), gk_family(3), gk_family(4), hk_family(1), hk_family(2), hk_family(3)]:
        rep = verify_partition(spec, 40, 100)
        assert rep.duplicates == [], spec.name
        assert rep.foreign == [], spec.name
        assert rep.missing == [] and rep.missing_inconclusive == [], spec.name


def _random_gamma(rng):
    while True:
        m = Mat2(*(rng.randint(-30, 30) for _ in range(4)))
        if m.det != 0:
            return m


@pytest.mark.criterion(10, "Moebius height symmetry and the 2H(g)H(x) bounds")
def test_criterion_10_moebius_heights():
    rng = random.Random(SEED)
    for _ in range(10_000):
        g = _random_gamma(rng)
        x = ProjPoint(rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4) or 1)
        hg = moebius_height(g)
        assert hg == moebius_height(moebius_inverse(g))
        hx = heights.height(x)
        hgx = heights.height(g.act(x))
        assert Fraction(hx, 2 * hg) <= hgx <= 2 * hg * hx


@pytest.mark.criterion(11, "sign inequality (a-c)(b-d) >= 0 on SL2(N0)")
def test_criterion_11_sign_inequality():
    rng = random.Random(SEED)
    for _ in range(10_000):
        w = "".join(rng.choice("LR") for _ in range(rng.randint(1, 40)))
        assert monoid.lemma_sign_check(monoid.compose_word(w))


@pytest.mark.criterion(12, "zero-density checks for {x^2, 2x^2} at 2 with c = 1")
def test_criterion_12_zero_density():
    fam = orbit.Family(parse_family("x^2;2*x^2"), ProjPoint(2, 1)).with_certified_c(1)
    assert fam.c == 1
    n0 = orbit.find_escape_depth(fam, 12)
    growth = orbit.growth_check(fam, 12, n0)
    assert growth.passed, growth.violations[:3]
    for b in (5, 10, 14):
        res = orbit.orbit_height_census(fam, b, 12, n0)
        assert res.k == 2
        assert res.bound == fam.r ** (n0 + 1) * b**2
        assert res.count <= res.bound
    trace = orbit.orbit_density_trace(fam, 10**6, 6)
    assert trace[-1].cutoff == 10**6
    assert trace[-1].ratio <= 1e-3
    last = [row.ratio for row in trace[-3:]]
    assert last[0] > last[1] > last[2]
