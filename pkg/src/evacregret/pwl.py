"""Exact piecewise-linear function algebra on closed rational intervals.

Functions are stored as breakpoints plus the values there, so continuity holds
by construction.  All arithmetic is over fractions.Fraction; every operation
documents its output-size bound.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .path_model import RationalLike, to_fraction


class PwlError(ValueError):
    """Raised when a piecewise-linear operation's precondition is violated."""


@dataclass(frozen=True)
class Line:
    """A line slope*x + intercept, optionally tagged with its source index."""

    slope: Fraction
    intercept: Fraction
    tag: Optional[int] = None

    def __init__(self, slope: RationalLike, intercept: RationalLike, tag: Optional[int] = None):
        object.__setattr__(self, "slope", to_fraction(slope))
        object.__setattr__(self, "intercept", to_fraction(intercept))
        object.__setattr__(self, "tag", tag)

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PwlFunction:
    """Continuous piecewise-linear function on [breakpoints[0], breakpoints[-1]].

    breakpoints are strictly increasing; values[t] is the function value at
    breakpoints[t].  A single-point domain (one breakpoint, no pieces) is
    allowed.  The function is *good* when all piece slopes are >= 0 and
    *positive* when they are all > 0 (vacuously true on a point domain).
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.breakpoints or len(self.breakpoints) != len(self.values):
            raise PwlError("breakpoints/values length mismatch or empty")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if a >= b:
                raise PwlError("breakpoints must be strictly increasing")

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1]

    @property
    def size(self) -> int:
        """Number of linear pieces."""
        return len(self.breakpoints) - 1

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (v2 - v1) / (q2 - q1)
            for q1, q2, v1, v2 in zip(
                self.breakpoints, self.breakpoints[1:], self.values, self.values[1:]
            )
        )

    def is_good(self) -> bool:
        return all(m >= 0 for m in self.slopes())

    def is_positive(self) -> bool:
        return all(m > 0 for m in self.slopes())

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self, x)

    def min_value(self) -> Fraction:
        return min(self.values)

    def max_value(self) -> Fraction:
        return max(self.values)


def from_points(points: Sequence[tuple[Fraction, Fraction]]) -> PwlFunction:
    return PwlFunction(tuple(p for p, _ in points), tuple(v for _, v in points))


def constant(value: RationalLike, lo: RationalLike, hi: RationalLike) -> PwlFunction:
    value, lo, hi = to_fraction(value), to_fraction(lo), to_fraction(hi)
    if lo == hi:
        return PwlFunction((lo,), (value,))
    return PwlFunction((lo, hi), (value, value))


def from_line(line: Line, lo: RationalLike, hi: RationalLike) -> PwlFunction:
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo == hi:
        return PwlFunction((lo,), (line.at(lo),))
    return PwlFunction((lo, hi), (line.at(lo), line.at(hi)))


def canonical(f: PwlFunction) -> PwlFunction:
    """Merge consecutive co-linear pieces so sizes compare deterministically."""
    if f.size <= 1:
        return f
    qs = [f.breakpoints[0], f.breakpoints[1]]
    vs = [f.values[0], f.values[1]]
    for q, v in zip(f.breakpoints[2:], f.values[2:]):
        prev_slope = (vs[-1] - vs[-2]) / (qs[-1] - qs[-2])
        if v - vs[-1] == prev_slope * (q - qs[-1]):
            qs[-1], vs[-1] = q, v
        else:
            qs.append(q)
            vs.append(v)
    return PwlFunction(tuple(qs), tuple(vs))


def evaluate(f: PwlFunction, x: RationalLike) -> Fraction:
    """Exact value at x via binary search over breakpoints."""
    x = to_fraction(x)
    if x < f.lo or x > f.hi:
        raise PwlError(f"{x} outside domain [{f.lo}, {f.hi}]")
    idx = bisect_right(f.breakpoints, x) - 1
    if idx == len(f.breakpoints) - 1:
        return f.values[idx]
    q1, q2 = f.breakpoints[idx], f.breakpoints[idx + 1]
    v1, v2 = f.values[idx], f.values[idx + 1]
    return v1 + (v2 - v1) * (x - q1) / (q2 - q1)


def restrict(f: PwlFunction, lo: RationalLike, hi: RationalLike) -> PwlFunction:
    """Restriction to [lo, hi], which must lie within the domain."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    if lo > hi:
        raise PwlError(f"empty restriction interval [{lo}, {hi}]")
    if lo == hi:
        return PwlFunction((lo,), (evaluate(f, lo),))
    points = [(lo, evaluate(f, lo))]
    for q, v in zip(f.breakpoints, f.values):
        if lo < q < hi:
            points.append((q, v))
    points.append((hi, evaluate(f, hi)))
    return from_points(points)


# Envelope construction --------------------------------------------------------


def upper_envelope(
    lines: Sequence[Line], interval: tuple[RationalLike, RationalLike]
) -> PwlFunction:
    """Pointwise max of slope-sorted lines restricted to the interval.

    Equal-slope lines are pre-filtered keeping the max intercept; a single
    left-to-right stack sweep then builds the envelope.  Output size is at most
    the number of distinct slopes.
    """
    if not lines:
        raise PwlError("upper_envelope of an empty line set")
    lo, hi = to_fraction(interval[0]), to_fraction(interval[1])
    if lo > hi:
        raise PwlError("upper_envelope interval is empty")
    filtered: list[Line] = []
    for line in lines:
        if filtered and line.slope < filtered[-1].slope:
            raise PwlError("upper_envelope requires slopes in nondecreasing order")
        if filtered and line.slope == filtered[-1].slope:
            if line.intercept > filtered[-1].intercept:
                filtered[-1] = line
        else:
            filtered.append(line)

    if lo == hi:
        return PwlFunction((lo,), (max(line.at(lo) for line in filtered),))

    # stack of (line, start): line is the envelope from `start` onward
    stack: list[tuple[Line, Fraction]] = []
    for line in filtered:
        start = lo
        while stack:
            top, top_start = stack[-1]
            # beyond this point `line` (steeper) dominates `top`
            cross = (top.intercept - line.intercept) / (line.slope - top.slope)
            if cross <= top_start:
                stack.pop()
            else:
                start = cross
                break
        else:
            start = lo
        if start < hi:
            stack.append((line, start))

    points = [(lo, stack[0][0].at(lo))]
    for line, start in stack[1:]:
        points.append((start, line.at(start)))
    points.append((hi, stack[-1][0].at(hi)))
    return canonical(from_points(points))


# Pointwise algebra ------------------------------------------------------------


def _merged_breakpoints(f: PwlFunction, g: PwlFunction, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Sorted union of both breakpoint sets clipped to [lo, hi], including the
    interval endpoints; single two-pointer pass."""
    out = [lo]
    i = j = 0
    fb, gb = f.breakpoints, g.breakpoints
    while i < len(fb) and fb[i] <= lo:
        i += 1
    while j < len(gb) and gb[j] <= lo:
        j += 1
    while True:
        fq = fb[i] if i < len(fb) else None
        gq = gb[j] if j < len(gb) else None
        if fq is not None and (gq is None or fq <= gq):
            q = fq
            i += 1
            if gq is not None and gq == q:
                j += 1
        elif gq is not None:
            q = gq
            j += 1
        else:
            break
        if q >= hi:
            break
        out.append(q)
    if hi > lo:
        out.append(hi)
    return out


def _values_on(f: PwlFunction, qs: list[Fraction]) -> list[Fraction]:
    """Values of f at an ascending list of points inside its domain, by a
    single left-to-right walk."""
    bp, vals = f.breakpoints, f.values
    out = []
    i = 0
    last = len(bp) - 1
    for q in qs:
        while i < last and bp[i + 1] <= q:
            i += 1
        if bp[i] == q:
            out.append(vals[i])
        else:
            out.append(
                vals[i] + (vals[i + 1] - vals[i]) * (q - bp[i]) / (bp[i + 1] - bp[i])
            )
    return out


def add(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Exact pointwise sum on the domain intersection."""
    lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
    if lo > hi:
        raise PwlError("add: disjoint domains")
    qs = _merged_breakpoints(f, g, lo, hi)
    fv = _values_on(f, qs)
    gv = _values_on(g, qs)
    points = [(q, a + b) for q, a, b in zip(qs, fv, gv)]
    if len(points) == 1:
        return PwlFunction((lo,), (points[0][1],))
    return canonical(from_points(points))


def add_const(f: PwlFunction, c: RationalLike) -> PwlFunction:
    c = to_fraction(c)
    return PwlFunction(f.breakpoints, tuple(v + c for v in f.values))


def add_line(f: PwlFunction, line: Line) -> PwlFunction:
    """Pointwise sum with a single line."""
    return PwlFunction(f.breakpoints, tuple(v + line.at(q) for q, v in zip(f.breakpoints, f.values)))


def scale(f: PwlFunction, c: RationalLike) -> PwlFunction:
    """Positive scaling c*f."""
    c = to_fraction(c)
    if c <= 0:
        raise PwlError("scale requires c > 0")
    return PwlFunction(f.breakpoints, tuple(c * v for v in f.values))


def shift_arg(f: PwlFunction, c: RationalLike) -> PwlFunction:
    """Argument translation: result(x) = f(x - c)."""
    c = to_fraction(c)
    return PwlFunction(tuple(q + c for q in f.breakpoints), f.values)


def inverse(f: PwlFunction) -> PwlFunction:
    """Inverse of a positive function; domain becomes [f(lo), f(hi)]."""
    if not f.is_positive():
        raise PwlError("inverse requires a positive function (all slopes > 0)")
    return PwlFunction(f.values, f.breakpoints)


def merge_max(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise max on the domain intersection.

    Output breakpoints are the merged input breakpoints plus at most one
    crossing per merged piece.
    """
    lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
    if lo > hi:
        raise PwlError("merge_max: disjoint domains")
    qs = _merged_breakpoints(f, g, lo, hi)
    fv = _values_on(f, qs)
    gv = _values_on(g, qs)
    if len(qs) == 1:
        return PwlFunction((lo,), (max(fv[0], gv[0]),))
    points: list[tuple[Fraction, Fraction]] = [(qs[0], max(fv[0], gv[0]))]
    for t in range(len(qs) - 1):
        d1 = fv[t] - gv[t]
        d2 = fv[t + 1] - gv[t + 1]
        if (d1 > 0 > d2) or (d1 < 0 < d2):
            q1, q2 = qs[t], qs[t + 1]
            ratio = d1 / (d1 - d2)
            cross = q1 + (q2 - q1) * ratio
            if q1 < cross < q2:
                points.append((cross, fv[t] + (fv[t + 1] - fv[t]) * ratio))
        points.append((qs[t + 1], max(fv[t + 1], gv[t + 1])))
    return canonical(from_points(points))


def merge_min_total(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Pointwise min on the domain intersection (total-function counterpart of
    the partial min-merge)."""
    neg_f = PwlFunction(f.breakpoints, tuple(-v for v in f.values))
    neg_g = PwlFunction(g.breakpoints, tuple(-v for v in g.values))
    m = merge_max(neg_f, neg_g)
    return PwlFunction(m.breakpoints, tuple(-v for v in m.values))


def max_difference(
    f: PwlFunction,
    g: PwlFunction,
    interval: Optional[tuple[RationalLike, RationalLike]] = None,
) -> tuple[Fraction, Fraction]:
    """Max and argmax of f - g over the interval; ties resolve to the smaller
    argument.  The difference is linear between merged breakpoints, so endpoint
    evaluation per segment suffices (O(size_f + size_g))."""
    value, args = max_difference_all(f, g, interval)
    return value, args[0]


def max_difference_all(
    f: PwlFunction,
    g: PwlFunction,
    interval: Optional[tuple[RationalLike, RationalLike]] = None,
) -> tuple[Fraction, list[Fraction]]:
    """Like max_difference but returns every breakpoint argmax, ascending."""
    if interval is None:
        lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
    else:
        lo, hi = to_fraction(interval[0]), to_fraction(interval[1])
    if lo > hi:
        raise PwlError("max_difference: empty interval")
    if lo < max(f.lo, g.lo) or hi > min(f.hi, g.hi):
        raise PwlError("max_difference: interval outside a domain")
    qs = _merged_breakpoints(f, g, lo, hi)
    fv = _values_on(f, qs)
    gv = _values_on(g, qs)
    best: Optional[Fraction] = None
    args: list[Fraction] = []
    for q, a, b in zip(qs, fv, gv):
        d = a - b
        if best is None or d > best:
            best, args = d, [q]
        elif d == best:
            args.append(q)
    assert best is not None
    return best, args


# Partial functions ------------------------------------------------------------


@dataclass(frozen=True)
class PartialPwl:
    """Piecewise-linear function with explicit domain gaps.

    Pieces are sorted and disjoint except possibly at shared single endpoints,
    where the effective value is the min of the touching pieces (consistent
    with +inf-gap semantics under min-merges).
    """

    pieces: tuple[PwlFunction, ...]

    def __post_init__(self):
        for a, b in zip(self.pieces, self.pieces[1:]):
            if a.hi > b.lo:
                raise PwlError("PartialPwl pieces must not overlap")

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def evaluate(self, x: RationalLike) -> Optional[Fraction]:
        """Value at x, or None inside a gap.  Shared endpoints take the min."""
        x = to_fraction(x)
        vals = [evaluate(p, x) for p in self.pieces if p.lo <= x <= p.hi]
        return min(vals) if vals else None


EMPTY_PARTIAL = PartialPwl(())


def total(f: PwlFunction) -> PartialPwl:
    return PartialPwl((f,))


def _lower_envelope_segment(
    covering: list[PwlFunction], q1: Fraction, q2: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Lower envelope, as breakpoint/value points, of linear segments that all
    cover [q1, q2]."""
    endpoint_pairs = {(evaluate(seg, q1), evaluate(seg, q2)) for seg in covering}
    width = q2 - q1
    entries = []
    for v1, v2 in endpoint_pairs:
        m = (v2 - v1) / width
        entries.append((m, v1 - m * q1))
    # negate to reuse the upper-envelope sweep (negated slopes must ascend)
    neg = [Line(-m, -b) for m, b in sorted(entries, key=lambda t: (-t[0], t[1]))]
    env = upper_envelope(neg, (q1, q2))
    return [(q, -v) for q, v in zip(env.breakpoints, env.values)]


def merge_min(parts: Iterable[PartialPwl]) -> PartialPwl:
    """Pointwise min over the union of domains, gaps treated as +infinity.

    Sweeps the merged breakpoints once; inside each elementary interval the
    covering pieces are plain lines whose lower envelope is exact.  Where the
    min is discontinuous (at a piece boundary), the output keeps touching
    pieces and PartialPwl.evaluate resolves shared endpoints by taking the min.
    """
    segments: list[PwlFunction] = []
    for part in parts:
        segments.extend(part.pieces)
    if not segments:
        return EMPTY_PARTIAL

    cuts = sorted({q for seg in segments for q in seg.breakpoints})
    point_min: dict[Fraction, Fraction] = {}
    for q in cuts:
        vals = [evaluate(seg, q) for seg in segments if seg.lo <= q <= seg.hi]
        if vals:
            point_min[q] = min(vals)

    # one envelope piece per covered elementary interval
    raw: list[PwlFunction] = []
    for q1, q2 in zip(cuts, cuts[1:]):
        covering = [seg for seg in segments if seg.lo <= q1 and q2 <= seg.hi]
        if covering:
            raw.append(from_points(_lower_envelope_segment(covering, q1, q2)))

    # point pieces where the pointwise min dips below every adjacent piece
    pieces: list[PwlFunction] = []
    for q, pm in point_min.items():
        adjacent = [p for p in raw if p.lo <= q <= p.hi]
        if all(evaluate(p, q) > pm for p in adjacent):
            pieces.append(PwlFunction((q,), (pm,)))
    pieces.extend(raw)
    pieces.sort(key=lambda p: (p.lo, p.hi))

    # coalesce neighbors that join continuously
    out = [pieces[0]]
    for p in pieces[1:]:
        prev = out[-1]
        if prev.hi == p.lo and prev.values[-1] == p.values[0] and p.size > 0:
            merged = list(zip(prev.breakpoints, prev.values)) + list(
                zip(p.breakpoints, p.values)
            )[1:]
            out[-1] = canonical(from_points(merged))
        else:
            out.append(p)
    return PartialPwl(tuple(out))


def merge_min_to_total(
    parts: Iterable[PartialPwl], lo: RationalLike, hi: RationalLike
) -> PwlFunction:
    """Min-merge that must cover [lo, hi] with a single continuous function."""
    lo, hi = to_fraction(lo), to_fraction(hi)
    merged = merge_min(parts)
    for piece in merged.pieces:
        if piece.lo <= lo and hi <= piece.hi:
            return restrict(piece, lo, hi)
    raise PwlError(
        f"min-merge left a gap or discontinuity inside [{lo}, {hi}]: "
        f"{[(str(p.lo), str(p.hi)) for p in merged.pieces]}"
    )
