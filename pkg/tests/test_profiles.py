"""Min-evacuation profiles against exact brute-force split enumeration."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from evacregret import Scenario, pwl, theta, theta_min_on_edge, two_varying
from evacregret.profiles import (
    Box,
    ProfileError,
    edge_min_profile,
    edge_min_profile_single,
    min_max_profile,
    min_max_y_profile,
    vertex_min_profile,
)

from conftest import (
    dense_theta_min,
    grid_min_max_offset,
    grid_min_max_split,
    random_convex_pwl,
    random_instance,
    random_positive_pwl,
    random_scenario,
    rational,
)


def aff(points):
    return pwl.from_points([(Fraction(a), Fraction(b)) for a, b in points])


def test_min_max_profile_example():
    f = aff([(0, 0), (1, 1)])
    g = aff([(0, 0), (1, 2)])
    m = min_max_profile(f, g, Box(0, 1, 0, 1))
    assert m.breakpoints == (0, Fraction(3, 2), 2)
    assert m.values == (0, 1, 2)


def test_min_max_profile_symmetric():
    f = aff([(0, 0), (1, 1)])
    m = min_max_profile(f, f, Box(0, 1, 0, 1))
    assert m.breakpoints == (0, 2)
    assert m.values == (0, 1)


def test_min_max_profile_degenerate_box():
    f = aff([(0, 0), (1, 1)])
    g = aff([(0, 0), (1, 2)])
    m = min_max_profile(f, g, Box(Fraction(1, 2), Fraction(1, 2), 0, 1))
    for alpha in (Fraction(1, 2), 1, Fraction(3, 2)):
        assert m(alpha) == max(f(Fraction(1, 2)), g(alpha - Fraction(1, 2)))


def test_min_max_profile_requires_positive():
    with pytest.raises(ProfileError):
        min_max_profile(pwl.constant(1, 0, 1), aff([(0, 0), (1, 1)]), Box(0, 1, 0, 1))


def test_min_max_profile_random_exact():
    """Exact agreement with full candidate enumeration, plus goodness and the
    linear size bound."""
    rng = random.Random(211)
    for _ in range(100):
        fl = random_positive_pwl(rng, 0, 3)
        fr = random_positive_pwl(rng, 0, 2)
        box = Box(0, 3, 0, 2)
        m = min_max_profile(fl, fr, box)
        assert m.is_good()
        assert m.size <= 5 * (fl.size + fr.size) + 8
        for _ in range(12):
            alpha = rational(rng, box.alpha_lo, box.alpha_hi, 32)
            assert m(alpha) == grid_min_max_split(fl, fr, box, alpha)
        assert m(box.alpha_lo) == max(fl(0), fr(0))
        assert m(box.alpha_hi) == max(fl(3), fr(2))


def test_min_max_profile_grid_tolerance():
    """The coarse-grid comparison: within max-slope * h, never below."""
    rng = random.Random(223)
    h = Fraction(1, 64)
    for _ in range(30):
        fl = random_positive_pwl(rng, 0, 2)
        fr = random_positive_pwl(rng, 0, 2)
        box = Box(0, 2, 0, 2)
        m = min_max_profile(fl, fr, box)
        lip = max(max(fl.slopes()), max(fr.slopes()))
        for _ in range(6):
            alpha = rational(rng, box.alpha_lo, box.alpha_hi, 16)
            coarse = grid_min_max_split(fl, fr, box, alpha, h=h)
            assert m(alpha) <= coarse <= m(alpha) + lip * h


def test_min_max_y_profile_degenerate_range_reduces():
    rng = random.Random(227)
    for _ in range(20):
        fl = random_convex_pwl(rng, 0, 2)
        fr = random_convex_pwl(rng, 0, 2)
        box = Box(0, 2, 0, 2)
        plain = min_max_profile(fl, fr, box)
        offset = min_max_y_profile(fl, fr, box, (0, 0))
        for _ in range(8):
            alpha = rational(rng, box.alpha_lo, box.alpha_hi, 16)
            assert plain(alpha) == offset(alpha)


def test_min_max_y_profile_symmetric_fixture():
    f = aff([(0, 0), (1, 1)])
    m = min_max_y_profile(f, f, Box(0, 1, 0, 1), (-1, 1))
    assert m.breakpoints == (0, 2)
    assert m.values == (0, 1)


def test_min_max_y_profile_single_point_box():
    f = aff([(0, 0), (2, 2)])
    g = aff([(0, 1), (2, 5)])
    m = min_max_y_profile(f, g, Box(1, 1, 1, 1), (0, Fraction(1, 2)))
    # min over y of max(1 + y, 3 - y): midpoint 1 clamped to 1/2
    assert m.values == (Fraction(5, 2),)


def test_min_max_y_profile_random_exact():
    rng = random.Random(229)
    for _ in range(100):
        fl = random_convex_pwl(rng, 0, 3)
        fr = random_convex_pwl(rng, 0, 2)
        box = Box(0, 3, 0, 2)
        y_lo = rational(rng, -1, 1, 4)
        y_hi = y_lo + rational(rng, 0, 2, 4)
        m = min_max_y_profile(fl, fr, box, (y_lo, y_hi))
        assert m.is_good()
        assert m.size <= 12 * (fl.size + fr.size) + 24
        for _ in range(10):
            alpha = rational(rng, box.alpha_lo, box.alpha_hi, 32)
            assert m(alpha) == grid_min_max_offset(fl, fr, box, (y_lo, y_hi), alpha)


def test_min_max_y_profile_rejects_repeated_slopes():
    f = aff([(0, 0), (1, 1), (2, 2)])  # canonicalizes to one piece, fine
    bad = pwl.PwlFunction((Fraction(0), Fraction(1), Fraction(2)), (Fraction(0), Fraction(2), Fraction(4)))
    # equal slopes across pieces collapse under canonicalization, so build a
    # genuinely non-convex one
    wiggle = pwl.PwlFunction(
        (Fraction(0), Fraction(1), Fraction(2)), (Fraction(0), Fraction(2), Fraction(3))
    )
    with pytest.raises(ProfileError):
        min_max_y_profile(wiggle, f, Box(0, 2, 0, 2), (0, 1))


def test_vertex_min_profile_fixture(t1):
    m = vertex_min_profile(t1, 0, 2, 1, Box(0, 2, 0, 2))
    assert m.breakpoints == (0, 3, 4)
    assert m.values == (1, 2, 3)


def test_vertex_min_profile_single_point_box(t1):
    m = vertex_min_profile(t1, 0, 2, 1, Box(1, 1, 1, 1))
    s = two_varying(t1, 0, 2, 1, 1)
    assert m.values == (theta(t1, 1, s).theta,)


def test_vertex_min_profile_weight_at_sink(t1):
    # pair (0, 1): nothing strictly inside, right coordinate pinned at zero,
    # sink at the varying vertex itself: the profile is identically zero
    m = vertex_min_profile(t1, 0, 1, 0, Box(0, 2, 0, 0))
    assert m.values == (0, 0)


def test_vertex_min_profile_random_exact():
    rng = random.Random(233)
    from evacregret.envelopes import left_envelope_raw, right_envelope_raw
    from conftest import _slice_candidates

    for _ in range(40):
        inst = random_instance(rng, max_n=5, zero_lower=rng.random() < 0.3)
        n = inst.n
        i = rng.randint(0, n - 1)
        j = rng.randint(i + 1, n)
        k = rng.randint(i, j)
        box = Box(
            inst.weight_lo[i], inst.weight_hi[i], inst.weight_lo[j], inst.weight_hi[j]
        )
        m = vertex_min_profile(inst, i, j, k, box)
        assert m.is_good()
        base = two_varying(inst, i, j, 0, 0)
        fl = left_envelope_raw(inst, i, k, base, box.a1, box.a2)
        fr = right_envelope_raw(inst, j, k, base, box.b1, box.b2)
        for _ in range(6):
            alpha = rational(rng, box.alpha_lo, box.alpha_hi, 16)
            lo = max(box.a1, alpha - box.b2)
            hi = min(box.a2, alpha - box.b1)
            cuts = _slice_candidates(fl, fr, alpha, lo, hi, [Fraction(0)])
            best = min(
                theta(inst, inst.positions[k], two_varying(inst, i, j, a, alpha - a)).theta
                for a in cuts
            )
            # the construction minimizes the linear extension, an upper bound
            # on the true time, exact wherever both sides stay weighted
            assert m(alpha) >= best
            if box.a1 > 0 and box.b1 > 0:
                assert m(alpha) == best


def test_edge_min_profile_fixture(t1):
    box = Box(0, 2, 0, 2)
    m = edge_min_profile(t1, 0, 2, 0, box)
    assert m.is_good()
    # compare against dense sampling over splits and sink positions
    for alpha in (Fraction(1, 2), 1, 2, 3):
        lo = max(box.a1, alpha - box.b2)
        hi = min(box.a2, alpha - box.b1)
        best = None
        for t in range(25):
            a = lo + (hi - lo) * Fraction(t, 24)
            s = two_varying(t1, 0, 2, a, alpha - a)
            _, value = theta_min_on_edge(t1, 0, s)
            best = value if best is None else min(best, value)
        assert m(alpha) <= best


def test_edge_min_profile_degenerate_box_matches_edge_min():
    """Cross-module oracle: a single-scenario box reproduces the closed-form
    per-edge minimum exactly."""
    rng = random.Random(239)
    for _ in range(40):
        inst = random_instance(rng, max_n=5, zero_lower=rng.random() < 0.5)
        n = inst.n
        k = rng.randrange(n)
        i = rng.randint(0, k)
        j = rng.randint(k + 1, n)
        s = random_scenario(rng, inst)
        base = two_varying(inst, i, j, s.weights[i], s.weights[j])
        box = Box(s.weights[i], s.weights[i], s.weights[j], s.weights[j])
        m = edge_min_profile(inst, i, j, k, box)
        expected = theta_min_on_edge(inst, k, base)[1]
        alpha = s.weights[i] + s.weights[j]
        assert m(alpha) == expected


def test_edge_min_profile_single_matches_direct():
    """Single-varying edge profile equals the per-edge closed form at samples
    (exactly, when all other weights are positive)."""
    rng = random.Random(241)
    for _ in range(30):
        inst = random_instance(rng, max_n=5)
        n = inst.n
        varying = rng.randint(0, n)
        k = rng.randrange(n)
        base = random_scenario(rng, inst)
        lo, hi = inst.weight_lo[varying], inst.weight_hi[varying]
        profile = edge_min_profile_single(inst, varying, k, base, (lo, hi))
        assert profile.lo == lo and profile.hi == hi
        for _ in range(5):
            alpha = rational(rng, lo, hi, 8)
            from evacregret.path_model import substitute

            s = substitute(base, varying, alpha)
            assert profile(alpha) == theta_min_on_edge(inst, k, s)[1]


def test_edge_min_profile_single_fixture(t1):
    base = two_varying(t1, 0, 0, 0, 0)
    profile = edge_min_profile_single(t1, 0, 1, base, (0, 2))
    # min over y in [1,2] of theta(y, (alpha,0,0)): sink at x_1 gives 1+alpha
    # for alpha > 0; the linear extension keeps 1+alpha at alpha=0
    assert profile.values[0] == profile(0) == 1
    assert profile(2) == 3


def test_edge_min_profile_all_zero(t1):
    zero_inst = type(t1)([0, 1, 2], [1, 2], [0, 0, 0], [0, 0, 0])
    m = edge_min_profile(zero_inst, 0, 2, 0, Box(0, 0, 0, 0))
    assert m.values == (0,)


def test_profile_monotone_nondecreasing():
    rng = random.Random(251)
    for _ in range(20):
        inst = random_instance(rng, max_n=4, zero_lower=rng.random() < 0.5)
        n = inst.n
        k = rng.randrange(n)
        i = rng.randint(0, k)
        j = rng.randint(k + 1, n)
        box = Box(
            inst.weight_lo[i], inst.weight_hi[i], inst.weight_lo[j], inst.weight_hi[j]
        )
        assert edge_min_profile(inst, i, j, k, box).is_good()
