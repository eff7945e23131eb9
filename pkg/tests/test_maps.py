import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from enumtrees.core import PreconditionError, ProjPoint
from enumtrees.heights import height, points_up_to
from enumtrees.maps import (
    MapSyntaxError, RationalMap, compose_maps, eval_map, moebius_height, moebius_inverse,
    parse_family, parse_map, pgl_equal,
)
from enumtrees.monoid import IDENTITY, L, R, Mat2

coeff_lists = st.lists(st.integers(-6, 6), min_size=1, max_size=4)


def _random_map(rng, max_deg=3):
    while True:
        n = [rng.randint(-5, 5) for _ in range(rng.randint(1, max_deg + 1))]
        d = [rng.randint(-5, 5) for _ in range(rng.randint(1, max_deg + 1))]
        try:
            return RationalMap(tuple(n), tuple(d))
        except PreconditionError:
            continue


def test_parse_examples():
    f = parse_map("x^2")
    assert (f.numer, f.denom) == ((0, 0, 1), (1,))
    assert parse_map("2*x^2").numer == (0, 0, 2)
    assert parse_map("(x)/(x+1)").as_mat2() == L
    assert parse_map("x + 1").as_mat2() == R
    assert parse_map("-x^3 + 2*x - 7").numer == (-7, 2, 0, -1)
    assert str(parse_map("(x)/(x+1)")) == "(x)/(x+1)"
    assert str(parse_map("x^2")) == "x^2"
    assert len(parse_family("x^2;2*x^2")) == 2


@pytest.mark.parametrize(
    "text,offset",
    [("x^", 2), ("x^2 +", 5), ("(x+1", 4), ("x$1", 1), ("x/(x+1)/x", 7), ("3 3", 2), ("", 0)],
)
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(MapSyntaxError) as e:
        parse_map(text)
    assert e.value.offset == offset
    assert f"offset {offset}" in str(e.value)


@pytest.mark.parametrize("text,msg", [("3", "constant map"), ("x/0", "zero denominator"), ("(x^2-1)/(x-1)", None)])
def test_parse_semantic_errors(text, msg):
    if msg is None:
        # the common factor cancels to x + 1, which is fine
        assert parse_map(text).as_mat2() == R
        return
    with pytest.raises(PreconditionError, match=msg):
        parse_map(text)


def test_constant_after_cancellation():
    with pytest.raises(PreconditionError, match="constant map"):
        parse_map("(2*x+2)/(x+1)")


def test_family_rejects_empty_entries():
    with pytest.raises(PreconditionError):
        parse_family("x^2;;x")


def test_normal_form():
    f = RationalMap((0, -2), (-4, -2))  # -2x / (-2x - 4) = x / (x + 2)
    assert (f.numer, f.denom) == ((0, 1), (2, 1))


def test_eval_examples():
    assert eval_map(parse_map("x^2"), ProjPoint(3, 5)) == ProjPoint(9, 25)
    assert eval_map(parse_map("x/(x+1)"), ProjPoint(1, 0)) == ProjPoint(1, 1)
    assert eval_map(parse_map("x+1"), ProjPoint(1, 0)) == ProjPoint(1, 0)
    assert eval_map(parse_map("1/x"), ProjPoint(0, 1)) == ProjPoint(1, 0)
    assert eval_map(parse_map("x^2/(x-1)"), ProjPoint(1, 1)) == ProjPoint(1, 0)


def test_eval_agrees_with_fraction_arithmetic():
    rng = random.Random(11)
    for _ in range(400):
        f = _random_map(rng)
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        num = sum(c * x**i for i, c in enumerate(f.numer))
        den = sum(c * x**i for i, c in enumerate(f.denom))
        got = eval_map(f, ProjPoint(x.numerator, x.denominator))
        if den == 0:
            assert got == ProjPoint(1, 0)
        else:
            assert got == ProjPoint((num / den).numerator, (num / den).denominator)


def test_moebius_eval_matches_matrix_action():
    rng = random.Random(3)
    for _ in range(10_000):
        m = Mat2(*(rng.randint(-12, 12) for _ in range(4)))
        if m.det == 0:
            continue
        p = ProjPoint(rng.randint(-99, 99), rng.randint(0, 99) or 1)
        assert eval_map(RationalMap.from_mat2(m), p) == m.act(p)


def test_compose_examples():
    sq = parse_map("x^2")
    assert compose_maps(sq, sq) == parse_map("x^4")
    assert compose_maps(parse_map("x/(x+1)"), parse_map("x+1")) == parse_map("(x+1)/(x+2)")
    assert compose_maps(sq, parse_map("x/(x+1)")) == parse_map("x^2/(x^2+2*x+1)")


def test_degree_multiplicative_and_evaluation_compatible():
    rng = random.Random(5)
    for _ in range(1000):
        f, g = _random_map(rng, 2), _random_map(rng, 2)
        h = compose_maps(f, g)
        assert h.degree == f.degree * g.degree
        p = ProjPoint(rng.randint(-20, 20), rng.randint(1, 20))
        assert eval_map(h, p) == eval_map(f, eval_map(g, p))


def test_moebius_height_examples():
    assert moebius_height(L) == 1
    assert moebius_height(Mat2(2, 1, 3, 2)) == 3
    assert moebius_height(Mat2(2, 0, 0, 2)) == 1
    with pytest.raises(PreconditionError, match="singular"):
        moebius_height(Mat2(1, 1, 1, 1))


def test_moebius_inverse_examples():
    assert moebius_inverse(L) == Mat2(1, 0, -1, 1)
    assert moebius_inverse(Mat2(2, 1, 3, 2)) == Mat2(2, -1, -3, 2)
    assert moebius_inverse(IDENTITY) == IDENTITY


def test_inverse_heights_random():
    rng = random.Random(13)
    for _ in range(10_000):
        m = Mat2(*(rng.randint(-50, 50) for _ in range(4)))
        if m.det == 0:
            continue
        inv = moebius_inverse(m)
        assert pgl_equal(m @ inv, IDENTITY)
        assert moebius_height(m) == moebius_height(inv)


def test_pgl_relation_is_not_free():
    linv = moebius_inverse(L)
    t = R @ linv @ R
    assert pgl_equal(t @ t, IDENTITY)


def test_squaring_heights():
    sq, sq1 = parse_map("x^2"), parse_map("x^2+1")
    for p in points_up_to(200):
        h = height(p)
        assert height(eval_map(sq, p)) == h * h
        assert Fraction(h * h, 2) <= height(eval_map(sq1, p)) <= 2 * h * h


@given(coeff_lists, coeff_lists, st.integers(-9, 9).filter(bool))
def test_normal_form_is_scale_invariant(n, d, k):
    try:
        f = RationalMap(tuple(n), tuple(d))
    except PreconditionError:
        return
    assert RationalMap(tuple(k * c for c in n), tuple(k * c for c in d)) == f
    assert f.denom[-1] > 0


@given(coeff_lists, coeff_lists)
def test_str_reparses(n, d):
    try:
        f = RationalMap(tuple(n), tuple(d))
    except PreconditionError:
        return
    assert parse_map(str(f)) == f
