import json
from fractions import Fraction

import pytest

from enumtrees.chan import (
    ForestSpec, PartitionReport, apply, calkin_wilf_spec, expand_forest, gk_family, hk_family,
    in_target, is_even_rational, shrink_ratio, verify_partition,
)
from enumtrees.core import BudgetExceeded, PreconditionError
from enumtrees.monoid import Mat2


def test_g2_shape():
    g = gk_family(2)
    assert g.maps == (Mat2(1, 0, 2, 1), Mat2(2, 1, 2, 2), Mat2(2, 2, 1, 2), Mat2(1, 2, 0, 1))
    assert g.roots == (Fraction(1, 2), Fraction(1), Fraction(2))
    assert g.maps[1].det == 2


@pytest.mark.parametrize("k", [2, 3, 4, 7])
def test_gk_sizes(k):
    g = gk_family(k)
    assert len(g.maps) == 2 * k and len(g.roots) == 2 * k - 1


@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_hk_sizes(k):
    h = hk_family(k)
    assert len(h.maps) == 2 * k + 1 and len(h.roots) == 2 * k
    assert all(is_even_rational(r) for r in h.roots)


def test_h1_shape_and_images():
    h = hk_family(1)
    assert h.maps == (Mat2(1, 0, 2, 1), Mat2(2, 1, 1, 2), Mat2(1, 2, 0, 1))
    imgs = {Fraction(*apply(m, 1, 2)) for m in h.maps}
    assert imgs == {Fraction(1, 4), Fraction(4, 5), Fraction(5, 2)}
    assert all(is_even_rational(x) for x in imgs)


def test_family_errors():
    with pytest.raises(PreconditionError):
        gk_family(1)
    with pytest.raises(PreconditionError):
        hk_family(0)
    with pytest.raises(PreconditionError):
        ForestSpec((Mat2(1, -1, 0, 1),), (Fraction(1),), "all-positive")
    with pytest.raises(PreconditionError):
        ForestSpec((Mat2(1, 0, 1, 1),), (Fraction(1), Fraction(1)), "all-positive")
    with pytest.raises(PreconditionError):
        ForestSpec((Mat2(1, 0, 1, 1),), (Fraction(1),), "odd")


def test_even_predicate():
    assert is_even_rational(Fraction(1, 2))
    assert not is_even_rational(Fraction(1, 3))
    assert is_even_rational(Fraction(5, 2))
    assert not in_target("even-product", Fraction(-1, 2))


@pytest.mark.parametrize(
    "spec,height,depth",
    [(calkin_wilf_spec(), 10, 20), (gk_family(2), 10, 12), (hk_family(1), 10, 14)],
)
def test_small_partitions_clean(spec, height, depth):
    rep = verify_partition(spec, height, depth)
    assert rep.clean, rep.to_dict()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hk_values_even(k):
    h = hk_family(k)
    assert all(is_even_rational(x) for _, _, x in expand_forest(h, 40, 60))


def _literal_hk(k):
    # the descending chain started with the ascending chain's last matrix
    h = hk_family(k)
    maps = list(h.maps)
    maps[k + 1] = Mat2(k, k - 1, k + 1, k)
    return ForestSpec(tuple(maps), h.roots, "even-product", f"H{k}-literal")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_uncorrected_hk_is_not_a_partition(k):
    rep = verify_partition(_literal_hk(k), 20, 8)
    assert not rep.clean
    assert rep.duplicates or rep.missing


@pytest.mark.parametrize("spec,depth", [(hk_family(1), 10), (gk_family(2), 8), (gk_family(3), 6), (hk_family(2), 6)])
def test_orbit_trees_injective(spec, depth):
    for j in range(len(spec.roots)):
        root_only = ForestSpec(spec.maps, (spec.roots[j],), spec.target)
        vals = [x for _, _, x in expand_forest(root_only, 10**9, depth)]
        assert len(vals) == len(set(vals))


def test_pruning_keeps_everything_under_the_cutoff():
    spec = gk_family(3)
    full = {x for _, _, x in expand_forest(spec, 10**12, 6) if max(x.numerator, x.denominator) <= 25}
    pruned = {x for _, _, x in expand_forest(spec, 25, 6)}
    assert full == pruned
    assert shrink_ratio(spec) <= 1


def test_missing_reported_when_too_shallow():
    rep = verify_partition(calkin_wilf_spec(), 10, 3)
    assert rep.missing_inconclusive or rep.missing
    # 1/10 needs depth 9 which the doubled recheck (6) does not reach
    assert Fraction(1, 10) in rep.missing


def test_budget():
    with pytest.raises(BudgetExceeded, match="budget exceeded"):
        verify_partition(gk_family(3), 40, 100, budget=100)


def test_report_json_shape():
    d = PartitionReport().to_dict()
    s = json.dumps(d, sort_keys=True, separators=(",", ":"))
    assert s.startswith('{"duplicates":[],"foreign":[],"missing":[],')
