"""Exact piecewise-linear algebra: envelopes, inverses, merges, differences."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from evacregret import pwl
from evacregret.pwl import Line, PwlError, PwlFunction

from conftest import random_positive_pwl, rational


def line(m, b):
    return Line(Fraction(m), Fraction(b))


def test_envelope_crossing():
    e = pwl.upper_envelope([line(0, 1), line(1, 0)], (0, 2))
    assert e.breakpoints == (0, 1, 2)
    assert e.values == (1, 1, 2)


def test_envelope_single_line():
    e = pwl.upper_envelope([line(2, 1)], (0, 3))
    assert e.values == (1, 7)


def test_envelope_hidden_line():
    e = pwl.upper_envelope([line(0, 0), line(1, -10)], (0, 2))
    assert e.values == (0, 0)


def test_envelope_empty_raises():
    with pytest.raises(PwlError):
        pwl.upper_envelope([], (0, 1))


def test_envelope_unsorted_raises():
    with pytest.raises(PwlError):
        pwl.upper_envelope([line(1, 0), line(0, 0)], (0, 1))


def test_envelope_equal_slope_dedup():
    e = pwl.upper_envelope([line(1, 0), line(1, 5)], (0, 2))
    assert e.values == (5, 7)


def test_envelope_random_pointwise():
    rng = random.Random(11)
    for _ in range(30):
        lines = sorted(
            (
                Line(rational(rng, 0, 4, 8), rational(rng, -4, 4, 8))
                for _ in range(rng.randint(1, 10))
            ),
            key=lambda l: (l.slope, l.intercept),
        )
        lo, hi = Fraction(-2), Fraction(3)
        env = pwl.upper_envelope(lines, (lo, hi))
        assert env.size <= len({l.slope for l in lines})
        for _ in range(35):
            x = rational(rng, lo, hi, 64)
            assert env(x) == max(l.at(x) for l in lines)
        for q in env.breakpoints:
            assert env(q) == max(l.at(q) for l in lines)


def test_inverse_affine():
    f = pwl.from_points([(Fraction(0), Fraction(1)), (Fraction(3), Fraction(7))])
    inv = pwl.inverse(f)
    assert inv.breakpoints == (1, 7)
    assert inv.values == (0, 3)
    assert pwl.inverse(inv) == f


def test_inverse_two_piece_roundtrip():
    f = pwl.from_points(
        [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(2), Fraction(3))]
    )
    inv = pwl.inverse(f)
    for q in inv.breakpoints:
        assert f(inv(q)) == q
    assert inv(2) == Fraction(3, 2)


def test_inverse_requires_positive():
    with pytest.raises(PwlError):
        pwl.inverse(pwl.constant(1, 0, 1))


def test_inverse_random_roundtrip():
    rng = random.Random(17)
    for _ in range(25):
        f = random_positive_pwl(rng, 0, 3)
        inv = pwl.inverse(f)
        for q in f.breakpoints:
            assert inv(f(q)) == q
        x = rational(rng, f.lo, f.hi, 32)
        assert inv(f(x)) == x


def test_add_scale_shift():
    f = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))])
    g = pwl.constant(1, 0, 2)
    assert pwl.add(f, g)(1) == 2
    assert pwl.shift_arg(f, 1).breakpoints == (1, 3)
    assert pwl.shift_arg(f, 1)(2) == 1
    two_a = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))])
    assert pwl.scale(two_a, 3)(1) == 6
    with pytest.raises(PwlError):
        pwl.add(f, pwl.constant(0, 5, 6))


def test_merge_max_examples():
    f = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))])
    m = pwl.merge_max(f, pwl.constant(1, 0, 2))
    assert m.breakpoints == (0, 1, 2)
    assert m.values == (1, 1, 2)


def test_merge_min_crossing():
    a = pwl.total(pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))]))
    b = pwl.total(pwl.from_points([(Fraction(0), Fraction(2)), (Fraction(2), Fraction(0))]))
    merged = pwl.merge_min([a, b])
    assert len(merged.pieces) == 1
    piece = merged.pieces[0]
    assert piece.breakpoints == (0, 1, 2)
    assert piece.values == (0, 1, 0)


def test_merge_min_gap():
    a = pwl.total(pwl.constant(5, 0, 1))
    b = pwl.total(pwl.constant(3, 2, 3))
    merged = pwl.merge_min([a, b])
    assert len(merged.pieces) == 2
    assert merged.evaluate(Fraction(3, 2)) is None
    assert merged.evaluate(Fraction(1, 2)) == 5


def test_merge_min_shared_endpoint_takes_min():
    a = pwl.total(pwl.constant(5, 0, 1))
    b = pwl.total(pwl.constant(3, 1, 2))
    merged = pwl.merge_min([a, b])
    assert merged.evaluate(1) == 3


def test_merge_min_random_pointwise():
    rng = random.Random(23)
    for _ in range(25):
        parts = []
        funcs = []
        for _ in range(rng.randint(1, 4)):
            lo = rational(rng, 0, 3, 8)
            hi = lo + rational(rng, 0, 2, 8)
            if lo == hi:
                f = PwlFunction((lo,), (rational(rng, 0, 4, 8),))
            else:
                f = pwl.from_points(
                    [(lo, rational(rng, 0, 4, 8)), (hi, rational(rng, 0, 4, 8))]
                )
            parts.append(pwl.total(f))
            funcs.append(f)
        merged = pwl.merge_min(parts)
        for _ in range(40):
            x = rational(rng, 0, 5, 32)
            naive = [f(x) for f in funcs if f.lo <= x <= f.hi]
            expected = min(naive) if naive else None
            assert merged.evaluate(x) == expected


def test_max_difference_examples():
    f = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(2))])
    one = pwl.constant(1, 0, 2)
    assert pwl.max_difference(f, one, (0, 2)) == (1, 2)
    assert pwl.max_difference(f, f, (0, 2)) == (0, 0)
    env = pwl.upper_envelope([line(0, 1), line(1, 0)], (0, 2))
    half = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(2), Fraction(1))])
    value, arg = pwl.max_difference(env, half, (0, 2))
    assert (value, arg) == (1, 0)
    _, args = pwl.max_difference_all(env, half, (0, 2))
    assert args == [0, 2]


def test_evaluate_examples():
    env = pwl.upper_envelope([line(0, 1), line(1, 0)], (0, 2))
    assert env(1) == 1
    assert env(2) == 2
    assert env(Fraction(1, 2)) == 1
    with pytest.raises(PwlError):
        env(3)


def test_canonical_merges_colinear():
    f = pwl.from_points(
        [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(2), Fraction(2))]
    )
    assert pwl.canonical(f).breakpoints == (0, 2)


def test_good_positive_classification():
    f = pwl.from_points([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))])
    assert f.is_good() and f.is_positive()
    g = pwl.constant(2, 0, 1)
    assert g.is_good() and not g.is_positive()
    point = PwlFunction((Fraction(1),), (Fraction(5),))
    assert point.is_good() and point.is_positive()


def test_good_preserved_by_algebra():
    rng = random.Random(29)
    for _ in range(20):
        f = random_positive_pwl(rng, 0, 2)
        g = random_positive_pwl(rng, 0, 2)
        assert pwl.add(f, g).is_positive()
        assert pwl.merge_max(f, g).is_good()
        assert pwl.merge_min_total(f, g).is_good()
