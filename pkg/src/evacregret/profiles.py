"""Min-evacuation profiles: minimum of max-of-two-monotone-curves over a box
slice, with or without a transferable offset, and the vertex/edge evacuation
profiles built from them.

The two core constructions compute, as functions of the total alpha:

  min over (a1,a2) splits of alpha inside a box of max(fL(a1), fR(a2))
  min over splits and an offset y in [lo,hi] of max(fL(a1)+y, fR(a2)-y)

Each is assembled as the min-merge of a small set of witness functions, one
per structural condition a minimizer can satisfy (a pinned box coordinate, a
balanced crossing, a pinned offset endpoint, or a breakpoint of one curve
matched against slope-bracketed pieces of the other).  Every witness is the
value of some feasible choice, hence an upper bound pointwise, and at least
one witness is tight at every alpha, so the min-merge is exact.  All outputs
are good functions of size O(n).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import pwl
from .envelopes import left_envelope_raw, right_envelope_raw
from .evacuation import _left_time_at_vertex, _right_time_at_vertex, theta_min_on_edge
from .path_model import (
    PathInstance,
    PathModelError,
    RationalLike,
    Scenario,
    substitute,
    to_fraction,
    two_varying,
)
from .pwl import PartialPwl, PwlFunction


class ProfileError(ValueError):
    """Raised when a profile construction's precondition is violated."""


@dataclass(frozen=True)
class Box:
    """The rectangle [a1,a2] x [b1,b2] of feasible coordinate pairs."""

    a1: Fraction
    a2: Fraction
    b1: Fraction
    b2: Fraction

    def __init__(self, a1: RationalLike, a2: RationalLike, b1: RationalLike, b2: RationalLike):
        object.__setattr__(self, "a1", to_fraction(a1))
        object.__setattr__(self, "a2", to_fraction(a2))
        object.__setattr__(self, "b1", to_fraction(b1))
        object.__setattr__(self, "b2", to_fraction(b2))
        if self.a1 > self.a2 or self.b1 > self.b2:
            raise ProfileError("box sides must be nonempty intervals")

    @property
    def alpha_lo(self) -> Fraction:
        return self.a1 + self.b1

    @property
    def alpha_hi(self) -> Fraction:
        return self.a2 + self.b2


# Decomposition of flat-bottomed inputs ----------------------------------------


def _flat_split(f: PwlFunction) -> tuple[Optional[Fraction], Optional[PwlFunction]]:
    """Split a nondecreasing f into max(constant, strictly-increasing part).

    Returns (const, positive) where either may be None.  The positive part is
    the strictly increasing tail extended linearly down to the left domain
    edge, so max(const, positive) == f exactly.  Requires any flat run of f to
    be a single leading piece (true for canonical upper envelopes of lines).
    """
    f = pwl.canonical(f)
    slopes = f.slopes()
    if not slopes:
        return f.values[0], None
    if all(m > 0 for m in slopes):
        return None, f
    if slopes[0] != 0 or any(m <= 0 for m in slopes[1:]):
        raise ProfileError("input is not flat-bottomed nondecreasing")
    if len(slopes) == 1:
        return f.values[0], None
    # extend the first increasing piece leftward over the flat run
    const = f.values[0]
    qs = list(f.breakpoints[1:])
    vs = list(f.values[1:])
    lead_q, lead_v = qs[0], vs[0]
    slope = (vs[1] - vs[0]) / (qs[1] - qs[0])
    qs.insert(0, f.lo)
    vs.insert(0, lead_v - slope * (lead_q - f.lo))
    return const, PwlFunction(tuple(qs), tuple(vs))


def _require_within(f: PwlFunction, lo: Fraction, hi: Fraction, name: str):
    if f.lo > lo or f.hi < hi:
        raise ProfileError(
            f"{name} domain [{f.lo}, {f.hi}] does not cover [{lo}, {hi}]"
        )


# Core: min over box slices of max(fL, fR) --------------------------------------


def _min_against_const_left(c: Fraction, f_right: PwlFunction, box: Box) -> PwlFunction:
    """min over the alpha-slice of max(c, fR(a2)): fR is minimized by pushing
    a1 as high as feasible."""
    parts = []
    if box.a1 < box.a2:
        parts.append(pwl.constant(f_right(box.b1), box.alpha_lo, box.a2 + box.b1))
    tail = pwl.shift_arg(pwl.restrict(f_right, box.b1, box.b2), box.a2)
    glue = parts + [tail]
    pieces = [(q, v) for part in glue for q, v in zip(part.breakpoints, part.values)]
    dedup = [pieces[0]]
    for q, v in pieces[1:]:
        if q > dedup[-1][0]:
            dedup.append((q, v))
    joined = (
        pwl.from_points(dedup) if len(dedup) > 1 else PwlFunction((dedup[0][0],), (dedup[0][1],))
    )
    return pwl.merge_max(joined, pwl.constant(c, joined.lo, joined.hi))


def _five_witness_profile(f_left: PwlFunction, f_right: PwlFunction, box: Box) -> PwlFunction:
    """The witness construction for strictly increasing fL, fR."""
    a1, a2, b1, b2 = box.a1, box.a2, box.b1, box.b2
    witnesses: list[PartialPwl] = []

    def pinned(const_val: Fraction, moving: PwlFunction, shift: Fraction) -> PartialPwl:
        piece = pwl.merge_max(
            pwl.shift_arg(moving, shift),
            pwl.constant(const_val, moving.lo + shift, moving.hi + shift),
        )
        return pwl.total(piece)

    witnesses.append(pinned(f_left(a1), pwl.restrict(f_right, b1, b2), a1))
    witnesses.append(pinned(f_left(a2), pwl.restrict(f_right, b1, b2), a2))
    witnesses.append(pinned(f_right(b1), pwl.restrict(f_left, a1, a2), b1))
    witnesses.append(pinned(f_right(b2), pwl.restrict(f_left, a1, a2), b2))

    # balanced crossing: invert both curves and re-invert their sum
    t_lo = max(f_left(a1), f_right(b1))
    t_hi = min(f_left(a2), f_right(b2))
    if t_lo <= t_hi:
        g = pwl.add(pwl.inverse(pwl.restrict(f_left, a1, a2)),
                    pwl.inverse(pwl.restrict(f_right, b1, b2)))
        witnesses.append(pwl.total(pwl.inverse(pwl.restrict(g, t_lo, t_hi))))

    return pwl.merge_min_to_total(witnesses, box.alpha_lo, box.alpha_hi)


def _min_max_core(f_left: PwlFunction, f_right: PwlFunction, box: Box) -> PwlFunction:
    """min over slices of max(fL(a1), fR(a2)) for flat-bottomed good inputs."""
    a1, a2, b1, b2 = box.a1, box.a2, box.b1, box.b2
    _require_within(f_left, a1, a2, "f_left")
    _require_within(f_right, b1, b2, "f_right")
    if a1 == a2 and b1 == b2:
        return pwl.constant(max(f_left(a1), f_right(b1)), box.alpha_lo, box.alpha_hi)
    if a1 == a2:
        return pwl.merge_max(
            pwl.shift_arg(pwl.restrict(f_right, b1, b2), a1),
            pwl.constant(f_left(a1), box.alpha_lo, box.alpha_hi),
        )
    if b1 == b2:
        return pwl.merge_max(
            pwl.shift_arg(pwl.restrict(f_left, a1, a2), b1),
            pwl.constant(f_right(b1), box.alpha_lo, box.alpha_hi),
        )

    const_l, pos_l = _flat_split(pwl.restrict(f_left, a1, a2))
    const_r, pos_r = _flat_split(pwl.restrict(f_right, b1, b2))
    consts = [c for c in (const_l, const_r) if c is not None]

    if pos_l is None and pos_r is None:
        return pwl.constant(max(consts), box.alpha_lo, box.alpha_hi)
    if pos_l is None:
        result = _min_against_const_left(const_l, pos_r, box)
    elif pos_r is None:
        result = _min_against_const_left(const_r, pos_l, Box(b1, b2, a1, a2))
    else:
        result = _five_witness_profile(pos_l, pos_r, box)
    for c in consts:
        result = pwl.merge_max(result, pwl.constant(c, result.lo, result.hi))
    return pwl.canonical(result)


def min_max_profile(f_left: PwlFunction, f_right: PwlFunction, box: Box) -> PwlFunction:
    """min over (a1,a2) in the alpha-slice of the box of max(fL(a1), fR(a2)).

    Inputs must be positive (strictly increasing) on the box sides; the result
    is good, of size at most 5*(size_fL + size_fR) + 8, built in linear time.
    """
    if box.a1 < box.a2 and not pwl.restrict(f_left, box.a1, box.a2).is_positive():
        raise ProfileError("min_max_profile requires positive f_left")
    if box.b1 < box.b2 and not pwl.restrict(f_right, box.b1, box.b2).is_positive():
        raise ProfileError("min_max_profile requires positive f_right")
    return _min_max_core(f_left, f_right, box)


# Core: the offset variant ------------------------------------------------------


def _preimage_interval(
    f: PwlFunction, v_lo: Fraction, v_hi: Fraction
) -> Optional[tuple[Fraction, Fraction]]:
    """[leftmost x with f(x) >= v_lo, rightmost x with f(x) <= v_hi] for
    nondecreasing f, or None when empty."""
    if v_lo > v_hi or f.values[-1] < v_lo or f.values[0] > v_hi:
        return None
    if f.values[0] >= v_lo:
        lo = f.lo
    else:
        idx = next(i for i, v in enumerate(f.values) if v >= v_lo)
        q1, q2 = f.breakpoints[idx - 1], f.breakpoints[idx]
        v1, v2 = f.values[idx - 1], f.values[idx]
        lo = q1 + (v_lo - v1) * (q2 - q1) / (v2 - v1)
    if f.values[-1] <= v_hi:
        hi = f.hi
    else:
        ridx = max(i for i, v in enumerate(f.values) if v <= v_hi)
        q1, q2 = f.breakpoints[ridx], f.breakpoints[ridx + 1]
        v1, v2 = f.values[ridx], f.values[ridx + 1]
        hi = q1 + (v_hi - v1) * (q2 - q1) / (v2 - v1)
    if lo > hi:
        return None
    return lo, hi


def _balanced_piece(
    pinned_value: Fraction,
    moving: PwlFunction,
    arg_shift: Fraction,
    arg_window: Optional[tuple[Fraction, Fraction]],
    y_lo: Fraction,
    y_hi: Fraction,
    moving_is_right: bool,
) -> Optional[PwlFunction]:
    """Witness piece (pinned + moving)/2 on the sub-domain where the balanced
    offset (moving - pinned)/2 (sign per side) stays within [y_lo, y_hi]."""
    if moving_is_right:
        window = _preimage_interval(moving, pinned_value + 2 * y_lo, pinned_value + 2 * y_hi)
    else:
        window = _preimage_interval(moving, pinned_value - 2 * y_hi, pinned_value - 2 * y_lo)
    if window is None:
        return None
    lo, hi = window
    if arg_window is not None:
        lo, hi = max(lo, arg_window[0]), min(hi, arg_window[1])
        if lo > hi:
            return None
    piece = pwl.scale(pwl.add_const(pwl.restrict(moving, lo, hi), pinned_value), Fraction(1, 2))
    return pwl.shift_arg(piece, arg_shift)


def _matched_min_sweep(pieces: list[PwlFunction]) -> PartialPwl:
    """Min-merge pieces whose domains are sorted with only adjacent overlaps.

    Implements the build-left-to-right sweep: on overlap, trim the previous
    piece, min the overlap exactly, concatenate.  Total work is asserted
    amortized-linear in the piece sizes.
    """
    out: list[PwlFunction] = []
    ops = 0

    def push(piece: PwlFunction):
        if out and out[-1].hi == piece.lo and out[-1].values[-1] == piece.values[0] \
                and piece.size > 0:
            merged = list(zip(out[-1].breakpoints, out[-1].values)) + list(
                zip(piece.breakpoints, piece.values)
            )[1:]
            out[-1] = pwl.canonical(pwl.from_points(merged))
        else:
            out.append(piece)

    for piece in pieces:
        ops += piece.size + 1
        if not out or piece.lo >= out[-1].hi:
            push(piece)
        else:
            prev = out.pop()
            ops += prev.size + 1
            cut = piece.lo
            if prev.lo < cut:
                push(pwl.restrict(prev, prev.lo, cut))
            overlap_hi = min(prev.hi, piece.hi)
            overlap = pwl.merge_min_total(
                pwl.restrict(prev, cut, overlap_hi), pwl.restrict(piece, cut, overlap_hi)
            )
            ops += overlap.size + 1
            push(overlap)
            if piece.hi > overlap_hi:
                push(pwl.restrict(piece, overlap_hi, piece.hi))
            elif prev.hi > overlap_hi:
                push(pwl.restrict(prev, overlap_hi, prev.hi))
    if __debug__:
        budget = sum(p.size + 1 for p in pieces)
        assert ops <= 8 * budget + 8, "matching sweep exceeded amortized budget"
    return PartialPwl(tuple(out))


def _min_max_offset_core(
    f_left: PwlFunction,
    f_right: PwlFunction,
    box: Box,
    y_lo: Fraction,
    y_hi: Fraction,
) -> PwlFunction:
    """min over slices and y in [y_lo, y_hi] of max(fL(a1)+y, fR(a2)-y)."""
    a1, a2, b1, b2 = box.a1, box.a2, box.b1, box.b2
    _require_within(f_left, a1, a2, "f_left")
    _require_within(f_right, b1, b2, "f_right")
    if y_lo > y_hi:
        raise ProfileError("offset range is empty")
    fl = pwl.canonical(pwl.restrict(f_left, a1, a2))
    fr = pwl.canonical(pwl.restrict(f_right, b1, b2))
    for f, name in ((fl, "f_left"), (fr, "f_right")):
        slopes = f.slopes()
        if any(m < 0 for m in slopes):
            raise ProfileError(f"{name} must be nondecreasing")
        if any(m2 <= m1 for m1, m2 in zip(slopes, slopes[1:])):
            raise ProfileError(f"{name} slope sequence must be strictly increasing")

    def clamped_pair(va: Fraction, vb: Fraction) -> Fraction:
        y = (vb - va) / 2
        y = min(max(y, y_lo), y_hi)
        return max(va + y, vb - y)

    if a1 == a2 and b1 == b2:
        return pwl.constant(clamped_pair(fl(a1), fr(b1)), box.alpha_lo, box.alpha_hi)
    if a1 == a2:
        moved = pwl.shift_arg(fr, a1)
        parts = [
            pwl.constant(fl(a1) + y_lo, moved.lo, moved.hi),
            pwl.scale(pwl.add_const(moved, fl(a1)), Fraction(1, 2)),
            pwl.add_const(moved, -y_hi),
        ]
        out = parts[0]
        for p in parts[1:]:
            out = pwl.merge_max(out, p)
        return pwl.canonical(out)
    if b1 == b2:
        moved = pwl.shift_arg(fl, b1)
        parts = [
            pwl.constant(fr(b1) - y_hi, moved.lo, moved.hi),
            pwl.scale(pwl.add_const(moved, fr(b1)), Fraction(1, 2)),
            pwl.add_const(moved, y_lo),
        ]
        out = parts[0]
        for p in parts[1:]:
            out = pwl.merge_max(out, p)
        return pwl.canonical(out)

    witnesses: list[PartialPwl] = [
        pwl.total(_min_max_core(pwl.add_const(fl, y_lo), pwl.add_const(fr, -y_lo), box)),
        pwl.total(_min_max_core(pwl.add_const(fl, y_hi), pwl.add_const(fr, -y_hi), box)),
    ]
    for pinned_arg, moving, is_right in (
        (a1, fr, True),
        (a2, fr, True),
    ):
        piece = _balanced_piece(
            fl(pinned_arg), moving, pinned_arg, None, y_lo, y_hi, is_right
        )
        if piece is not None:
            witnesses.append(pwl.total(piece))
    for pinned_arg, moving, is_right in (
        (b1, fl, False),
        (b2, fl, False),
    ):
        piece = _balanced_piece(
            fr(pinned_arg), moving, pinned_arg, None, y_lo, y_hi, is_right
        )
        if piece is not None:
            witnesses.append(pwl.total(piece))

    # breakpoint-matching witness: each interior breakpoint of one curve paired
    # with the slope-bracketed run of the other
    witnesses.append(_matching_witness(fl, fr, y_lo, y_hi, left_side=True))
    witnesses.append(_matching_witness(fl, fr, y_lo, y_hi, left_side=False))

    result = pwl.merge_min_to_total(witnesses, box.alpha_lo, box.alpha_hi)
    if not result.is_good():
        raise ProfileError("offset profile came out non-monotone; witness bug")
    return result


def _matching_witness(
    fl: PwlFunction, fr: PwlFunction, y_lo: Fraction, y_hi: Fraction, left_side: bool
) -> PartialPwl:
    """Witness for minimizers pinning a breakpoint of one curve: the matched
    run of the other curve is the contiguous block of pieces whose slopes fall
    between the two slopes meeting at the breakpoint."""
    anchor, moving = (fl, fr) if left_side else (fr, fl)
    slopes_a = anchor.slopes()
    slopes_m = moving.slopes()
    pieces: list[PwlFunction] = []
    for k in range(1, len(slopes_a)):
        m_lo, m_hi = slopes_a[k - 1], slopes_a[k]
        s_first = next((s for s, m in enumerate(slopes_m) if m >= m_lo), None)
        if s_first is None or slopes_m[s_first] > m_hi:
            continue
        s_last = max(s for s, m in enumerate(slopes_m) if m <= m_hi)
        window = (moving.breakpoints[s_first], moving.breakpoints[s_last + 1])
        crit = anchor.breakpoints[k]
        piece = _balanced_piece(
            anchor(crit), moving, crit, window, y_lo, y_hi, moving_is_right=left_side
        )
        if piece is not None:
            pieces.append(piece)
    if not pieces:
        return pwl.EMPTY_PARTIAL
    return _matched_min_sweep(pieces)


def min_max_y_profile(
    f_left: PwlFunction,
    f_right: PwlFunction,
    box: Box,
    y_range: tuple[RationalLike, RationalLike],
) -> PwlFunction:
    """Offset variant: min over slices and y of max(fL(a1)+y, fR(a2)-y).

    Requires positive inputs with strictly increasing slope sequences; output
    is good with O(size_fL + size_fR) pieces.
    """
    y_lo, y_hi = to_fraction(y_range[0]), to_fraction(y_range[1])
    if box.a1 < box.a2 and not pwl.restrict(f_left, box.a1, box.a2).is_positive():
        raise ProfileError("min_max_y_profile requires positive f_left")
    if box.b1 < box.b2 and not pwl.restrict(f_right, box.b1, box.b2).is_positive():
        raise ProfileError("min_max_y_profile requires positive f_right")
    return _min_max_offset_core(f_left, f_right, box, y_lo, y_hi)


# Vertex and edge evacuation profiles -------------------------------------------


def _side_profile(
    instance: PathInstance,
    base: Scenario,
    varying: int,
    vertex: int,
    lo: Fraction,
    hi: Fraction,
    side: str,
) -> PwlFunction:
    """One-sided envelope for a profile, with degenerate (pinned) coordinates
    evaluated by the true closed form instead of the linear extension."""
    if lo == hi:
        pinned = substitute(base, varying, lo)
        if side == "left":
            value, _ = _left_time_at_vertex(instance, vertex, pinned)
        else:
            value, _ = _right_time_at_vertex(instance, vertex, pinned)
        return pwl.constant(value, lo, hi)
    if side == "left":
        return left_envelope_raw(instance, varying, vertex, base, lo, hi)
    return right_envelope_raw(instance, varying, vertex, base, lo, hi)


@lru_cache(maxsize=1 << 16)
def _vertex_profile_core(
    instance: PathInstance, base: Scenario, vi: int, vj: int, k: int, box: Box
) -> PwlFunction:
    f_left = _side_profile(instance, base, vi, k, box.a1, box.a2, "left")
    f_right = _side_profile(instance, base, vj, k, box.b1, box.b2, "right")
    return _min_max_core(f_left, f_right, box)


def _edge_profile_core(
    instance: PathInstance, base: Scenario, vi: int, vj: int, k: int, box: Box
) -> PwlFunction:
    at_left = _vertex_profile_core(instance, base, vi, vj, k, box)
    at_right = _vertex_profile_core(instance, base, vi, vj, k + 1, box)
    xk = instance.positions[k]
    xk1 = instance.positions[k + 1]
    f_left = pwl.add_const(
        _side_profile(instance, base, vi, k + 1, box.a1, box.a2, "left"), -xk1
    )
    f_right = pwl.add_const(
        _side_profile(instance, base, vj, k, box.b1, box.b2, "right"), xk
    )
    interior = _min_max_offset_core(f_left, f_right, box, xk, xk1)
    # a side with no weight contributes zero, not its (negative) line value
    interior = pwl.merge_max(interior, pwl.constant(0, interior.lo, interior.hi))
    return pwl.canonical(
        pwl.merge_min_total(pwl.merge_min_total(at_left, at_right), interior)
    )


def vertex_min_profile(
    instance: PathInstance, i: int, j: int, k: int, box: Box
) -> PwlFunction:
    """Min over box slices of the evacuation time at x_k under two-varying
    scenarios with free weights at i and j (i <= k <= j)."""
    if not (0 <= i <= k <= j < instance.vertex_count):
        raise ProfileError(f"vertex_min_profile requires i <= k <= j, got {i},{k},{j}")
    base = two_varying(instance, i, j, 0, 0)
    return _vertex_profile_core(instance, base, i, j, k, box)


def edge_min_profile(
    instance: PathInstance, i: int, j: int, k: int, box: Box
) -> PwlFunction:
    """Min over box slices and sink positions on edge [x_k, x_{k+1}] of the
    evacuation time under two-varying scenarios (i <= k < j)."""
    if not (0 <= i <= k < j < instance.vertex_count):
        raise ProfileError(f"edge_min_profile requires i <= k < j, got {i},{k},{j}")
    base = two_varying(instance, i, j, 0, 0)
    return _edge_profile_core(instance, base, i, j, k, box)


@lru_cache(maxsize=1 << 16)
def _single_vertex_part(
    instance: PathInstance, base: Scenario, varying: int, k: int, lo: Fraction, hi: Fraction
) -> PwlFunction:
    """Evacuation time at x_k with one varying weight: pointwise max of the
    varying side's envelope and the fixed side's true constant."""
    if varying <= k:
        moving = left_envelope_raw(instance, varying, k, base, lo, hi)
        fixed, _ = _right_time_at_vertex(instance, k, base)
    else:
        moving = right_envelope_raw(instance, varying, k, base, lo, hi)
        fixed, _ = _left_time_at_vertex(instance, k, base)
    return pwl.merge_max(moving, pwl.constant(fixed, lo, hi))


@lru_cache(maxsize=1 << 16)
def _edge_profile_single_core(
    instance: PathInstance, base: Scenario, varying: int, k: int, lo: Fraction, hi: Fraction
) -> PwlFunction:
    """Single-varying edge profile without the two-coordinate machinery: both
    vertex parts plus the interior, whose offset minimum against a constant
    side is the clamped balanced point in closed form."""
    xk, xk1 = instance.positions[k], instance.positions[k + 1]
    at_left = _single_vertex_part(instance, base, varying, k, lo, hi)
    at_right = _single_vertex_part(instance, base, varying, k + 1, lo, hi)
    if varying <= k:
        moving = pwl.add_const(
            left_envelope_raw(instance, varying, k + 1, base, lo, hi), -xk1
        )
        fixed = _right_time_at_vertex(instance, k, base)[0] + xk
        # min over y of max(moving + y, fixed - y)
        parts = [
            pwl.add_const(moving, xk),
            pwl.scale(pwl.add_const(moving, fixed), Fraction(1, 2)),
            pwl.constant(fixed - xk1, lo, hi),
        ]
    else:
        moving = pwl.add_const(
            right_envelope_raw(instance, varying, k, base, lo, hi), xk
        )
        fixed = _left_time_at_vertex(instance, k + 1, base)[0] - xk1
        parts = [
            pwl.add_const(moving, -xk1),
            pwl.scale(pwl.add_const(moving, fixed), Fraction(1, 2)),
            pwl.constant(fixed + xk, lo, hi),
        ]
    interior = parts[0]
    for p in parts[1:]:
        interior = pwl.merge_max(interior, p)
    interior = pwl.merge_max(interior, pwl.constant(0, lo, hi))
    return pwl.canonical(
        pwl.merge_min_total(pwl.merge_min_total(at_left, at_right), interior)
    )


def edge_min_profile_single(
    instance: PathInstance,
    j: int,
    k: int,
    base: Scenario,
    alpha_range: tuple[RationalLike, RationalLike],
) -> PwlFunction:
    """Min over sink positions on edge [x_k, x_{k+1}] of the evacuation time
    with only the weight at v_j varying, all others fixed by `base`.

    Equivalent to the two-varying edge profile with an auxiliary coordinate
    pinned at its base value, but built directly: the fixed side collapses to
    a true constant and the interior offset minimum is closed-form.
    """
    lo, hi = to_fraction(alpha_range[0]), to_fraction(alpha_range[1])
    if not (0 <= k < instance.n and 0 <= j < instance.vertex_count):
        raise ProfileError(f"edge_min_profile_single indices out of range: {j},{k}")
    if lo == hi:
        pinned = substitute(base, j, lo)
        return pwl.constant(theta_min_on_edge(instance, k, pinned)[1], lo, hi)
    return _edge_profile_single_core(instance, base, j, k, lo, hi)
