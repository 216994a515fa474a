"""Worst-case regret at a point and the minmax-regret sink location.

The worst case over all legal scenarios reduces to six families of structured
scenarios, each leaving at most two vertex weights free.  Every family's
contribution at a sink is the max of a difference of two piecewise-linear
functions of the free total weight: an arrival-time line (or envelope of
lines) minus a min-evacuation profile.  The left-to-right families are
evaluated directly; the mirrored families reuse the same code on the
reflected instance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import pwl
from .envelopes import left_envelope_raw, right_envelope_raw
from .evacuation import optimal_sink, theta, theta_min_on_edge
from .path_model import (
    PathInstance,
    PathModelError,
    Point,
    RationalLike,
    Scenario,
    as_point,
    min_capacity,
    prefix_weight,
    reflect_instance,
    reflect_scenario,
    substitute,
    to_fraction,
    two_varying,
)
from .profiles import Box, edge_min_profile, edge_min_profile_single
from .pwl import Line, PwlFunction

FAMILY_LEFT_SINGLE = "left_single"
FAMILY_LEFT_PAIR = "left_pair"
FAMILY_LEFT_PAIR_INNER = "left_pair_inner"
FAMILY_RIGHT_SINGLE = "right_single"
FAMILY_RIGHT_PAIR = "right_pair"
FAMILY_RIGHT_PAIR_INNER = "right_pair_inner"

_MIRROR = {
    FAMILY_LEFT_SINGLE: FAMILY_RIGHT_SINGLE,
    FAMILY_LEFT_PAIR: FAMILY_RIGHT_PAIR,
    FAMILY_LEFT_PAIR_INNER: FAMILY_RIGHT_PAIR_INNER,
}


@dataclass(frozen=True)
class Witness:
    """The maximizing family, its indices, free weights, and the resulting
    scenario; replaying the scenario through the evacuation module reproduces
    the reported value whenever the worst case is attained."""

    family: str
    i: Optional[int]
    j: int
    edge: int
    alpha: Fraction
    beta: Optional[Fraction]
    scenario: Scenario


@dataclass(frozen=True)
class RegretReport:
    value: Fraction
    location: Point
    witness: Optional[Witness]


@dataclass(frozen=True)
class _Term:
    """One family's contribution at a vertex: its max value and argmax data."""

    value: Fraction
    family: str
    i: Optional[int]
    j: int
    edge: int
    alphas: tuple[Fraction, ...]


@dataclass(frozen=True)
class VertexRegret:
    """Aggregated max regret at a vertex with the per-side maxima.

    Candidate terms achieving each side's max are kept (mirror-side terms in
    reflected coordinates) so interior points along an incident edge can
    replay-verify a witness of the side that dominates there."""

    value: Fraction
    g_value: Optional[Fraction]
    h_value: Optional[Fraction]
    witness: Optional[Witness]
    g_candidates: tuple[_Term, ...] = ()
    h_candidates: tuple[_Term, ...] = ()


# Left-side family evaluators ----------------------------------------------------


def _single_line(instance: PathInstance, j: int, x: Fraction, base: Scenario) -> Line:
    """The arrival-time line of vertex j at sink x as its free weight grows."""
    cap = min_capacity(instance, instance.positions[j], x)
    intercept = (x - instance.positions[j]) + prefix_weight(base, 0, j) / cap
    return Line(1 / cap, intercept, tag=j)


def _arrival_true(instance: PathInstance, j: int, x: Fraction, s: Scenario) -> Fraction:
    """True arrival time of vertex j's prefix at x (zero when weightless)."""
    weight = prefix_weight(s, 0, j)
    if weight == 0:
        return Fraction(0)
    cap = min_capacity(instance, instance.positions[j], x)
    return (x - instance.positions[j]) + weight / cap


def _term_line(
    instance: PathInstance,
    varying: int,
    j: int,
    x: Fraction,
    base: Scenario,
    lo: Fraction,
    hi: Fraction,
) -> PwlFunction:
    """Arrival-time line of vertex j over the varying weight's range.

    A degenerate range pins a single scenario, so the true (zero-aware) value
    applies; otherwise the linear extension is the family's one-sided limit at
    a vanishing boundary and exact everywhere else."""
    if lo == hi:
        value = _arrival_true(instance, j, x, substitute(base, varying, lo))
        return pwl.constant(value, lo, hi)
    return pwl.from_line(_single_line(instance, j, x, base), lo, hi)


def eval_left_single(instance: PathInstance, j: int, x: RationalLike) -> _Term:
    """Family: only the weight at v_j varies, everything else at lower bounds;
    sink candidates for the subtrahend range over [x_j, x_n]."""
    x = to_fraction(x)
    base = two_varying(instance, j, j, 0, 0)
    lo, hi = instance.weight_lo[j], instance.weight_hi[j]
    line = _term_line(instance, j, j, x, base, lo, hi)
    best: Optional[_Term] = None
    for u in range(j, instance.n):
        profile = edge_min_profile_single(instance, j, u, base, (lo, hi))
        value, args = pwl.max_difference_all(line, profile)
        if best is None or value > best.value:
            best = _Term(value, FAMILY_LEFT_SINGLE, None, j, u, tuple(args))
    assert best is not None
    return best


def eval_left_pair(instance: PathInstance, i: int, j: int, x: RationalLike) -> _Term:
    """Family: pair (i, j) with the weight at v_j pinned to its upper bound
    and the weight at v_i free."""
    x = to_fraction(x)
    base = two_varying(instance, i, j, 0, instance.weight_hi[j])
    lo, hi = instance.weight_lo[i], instance.weight_hi[i]
    line = _term_line(instance, i, j, x, base, lo, hi)
    best: Optional[_Term] = None
    for u in range(j, instance.n):
        profile = edge_min_profile_single(instance, i, u, base, (lo, hi))
        value, args = pwl.max_difference_all(line, profile)
        if best is None or value > best.value:
            best = _Term(value, FAMILY_LEFT_PAIR, i, j, u, tuple(args))
    assert best is not None
    return best


def left_arrival_envelope(
    instance: PathInstance, i: int, j: int, x: RationalLike
) -> PwlFunction:
    """Upper envelope, in the pair's total free weight, of the arrival-time
    lines of every vertex between x_j and the sink."""
    x = to_fraction(x)
    base = two_varying(instance, i, j, 0, 0)
    box = _pair_box(instance, i, j)
    t_max = instance.last_vertex_at_or_left(x)
    if instance.positions[t_max] == x:
        t_max -= 1
    if t_max < j:
        raise PathModelError("no vertex between x_j and the sink")
    if box.alpha_lo == box.alpha_hi:
        # both weights pinned: a single scenario, evaluated with the true rule
        s = two_varying(instance, i, j, box.a1, box.b1)
        value = max(_arrival_true(instance, t, x, s) for t in range(j, t_max + 1))
        return pwl.constant(value, box.alpha_lo, box.alpha_hi)
    lines = [_single_line(instance, t, x, base) for t in range(t_max, j - 1, -1)]
    return pwl.upper_envelope(lines, (box.alpha_lo, box.alpha_hi))


def _pair_box(instance: PathInstance, i: int, j: int) -> Box:
    return Box(
        instance.weight_lo[i],
        instance.weight_hi[i],
        instance.weight_lo[j],
        instance.weight_hi[j],
    )


def eval_left_pair_inner(
    instance: PathInstance, i: int, j: int, x: RationalLike
) -> _Term:
    """Family: pair (i, j) with both weights free and the subtrahend's sink
    ranging over [x_i, x_j]."""
    x = to_fraction(x)
    box = _pair_box(instance, i, j)
    envelope = left_arrival_envelope(instance, i, j, x)
    best: Optional[_Term] = None
    for u in range(i, j):
        profile = edge_min_profile(instance, i, j, u, box)
        value, args = pwl.max_difference_all(envelope, profile)
        if best is None or value > best.value:
            best = _Term(value, FAMILY_LEFT_PAIR_INNER, i, j, u, tuple(args))
    assert best is not None
    return best


def _left_terms(instance: PathInstance, m: int) -> list[_Term]:
    """All left-side family contributions at vertex x_m."""
    terms: list[_Term] = []
    for j in range(m):
        terms.append(eval_left_single(instance, j, instance.positions[m]))
    for j in range(1, m):
        for i in range(j):
            terms.append(eval_left_pair(instance, i, j, instance.positions[m]))
            terms.append(eval_left_pair_inner(instance, i, j, instance.positions[m]))
    return terms


def _mirror_term(instance: PathInstance, term: _Term) -> _Term:
    n = instance.n
    return _Term(
        term.value,
        _MIRROR[term.family],
        None if term.i is None else n - term.i,
        n - term.j,
        n - 1 - term.edge,
        term.alphas,
    )


def eval_right_single(instance: PathInstance, i: int, x: RationalLike) -> _Term:
    """Mirror of eval_left_single: only the weight at v_i varies, sink
    candidates left of x_i."""
    mirror = reflect_instance(instance)
    x = to_fraction(x)
    term = eval_left_single(mirror, instance.n - i, instance.positions[-1] - x)
    return _mirror_term(instance, term)


def eval_right_pair(instance: PathInstance, i: int, j: int, x: RationalLike) -> _Term:
    """Mirror of eval_left_pair for a pair x < x_i < x_j with the weight at
    v_i pinned to its upper bound."""
    mirror = reflect_instance(instance)
    x = to_fraction(x)
    term = eval_left_pair(
        mirror, instance.n - j, instance.n - i, instance.positions[-1] - x
    )
    return _mirror_term(instance, term)


def eval_right_pair_inner(
    instance: PathInstance, i: int, j: int, x: RationalLike
) -> _Term:
    """Mirror of eval_left_pair_inner for a pair right of the sink."""
    mirror = reflect_instance(instance)
    x = to_fraction(x)
    term = eval_left_pair_inner(
        mirror, instance.n - j, instance.n - i, instance.positions[-1] - x
    )
    return _mirror_term(instance, term)


# Witness reconstruction ---------------------------------------------------------


def _candidate_splits(
    instance: PathInstance, i: int, j: int, u: int, alpha: Fraction, box: Box
) -> list[Fraction]:
    """Candidate first coordinates for the pair split alpha = a1 + a2: slice
    endpoints, envelope breakpoints projected to the slice, and piecewise
    crossings of the two side envelopes along the slice."""
    lo = max(box.a1, alpha - box.b2)
    hi = min(box.a2, alpha - box.b1)
    if lo > hi:
        return []
    base = two_varying(instance, i, j, 0, 0)
    fl = left_envelope_raw(instance, i, u + 1, base, box.a1, box.a2)
    fr = right_envelope_raw(instance, j, u, base, box.b1, box.b2)
    cuts = {lo, hi}
    for q in fl.breakpoints:
        if lo <= q <= hi:
            cuts.add(q)
    for q in fr.breakpoints:
        if lo <= alpha - q <= hi:
            cuts.add(alpha - q)
    ordered = sorted(cuts)
    for q1, q2 in zip(ordered, ordered[1:]):
        d1 = fl(q1) - fr(alpha - q1)
        d2 = fl(q2) - fr(alpha - q2)
        if (d1 > 0 > d2) or (d1 < 0 < d2):
            cross = q1 + (q2 - q1) * d1 / (d1 - d2)
            cuts.add(cross)
    return sorted(cuts)


def _witness_scenarios(
    instance: PathInstance, term: _Term
) -> list[tuple[Scenario, Fraction, Optional[Fraction]]]:
    """Scenario candidates realizing a term's argmax, best split first."""
    out: list[tuple[Scenario, Fraction, Optional[Fraction]]] = []
    if term.family == FAMILY_LEFT_SINGLE:
        base = two_varying(instance, term.j, term.j, 0, 0)
        for alpha in term.alphas:
            out.append((substitute(base, term.j, alpha), alpha, None))
    elif term.family == FAMILY_LEFT_PAIR:
        beta = instance.weight_hi[term.j]
        base = two_varying(instance, term.i, term.j, 0, beta)
        for alpha in term.alphas:
            out.append((substitute(base, term.i, alpha), alpha, beta))
    else:
        box = _pair_box(instance, term.i, term.j)
        for alpha in term.alphas:
            splits = _candidate_splits(instance, term.i, term.j, term.edge, alpha, box)
            scored = []
            for a1 in splits:
                s = two_varying(instance, term.i, term.j, a1, alpha - a1)
                scored.append((theta_min_on_edge(instance, term.edge, s)[1], a1, s))
            scored.sort(key=lambda t: (t[0], t[1]))
            for _, a1, s in scored:
                out.append((s, a1, alpha - a1))
    return out


# Aggregation ---------------------------------------------------------------------


class RegretSolver:
    """Evaluates the worst-case regret at sinks and searches for its minimizer.

    Holds the reflected instance so the right-side families reuse the
    left-side evaluators, and caches per-vertex results for the outer search.
    """

    def __init__(self, instance: PathInstance):
        self.instance = instance
        self.reflected = reflect_instance(instance)
        self._vertex_cache: dict[int, VertexRegret] = {}

    # -- per-vertex aggregation

    def _terms_at_vertex(self, m: int) -> tuple[list[_Term], list[_Term]]:
        left = _left_terms(self.instance, m)
        mirrored = _left_terms(self.reflected, self.instance.n - m)
        return left, mirrored

    def _reflect_term_witness(
        self, scenario: Scenario, term: _Term
    ) -> tuple[Scenario, _Term]:
        return reflect_scenario(scenario), _mirror_term(self.instance, term)

    def vertex_regret(self, m: int) -> VertexRegret:
        if m in self._vertex_cache:
            return self._vertex_cache[m]
        left, mirrored = self._terms_at_vertex(m)
        g_value = max((t.value for t in left), default=None)
        h_value = max((t.value for t in mirrored), default=None)
        if g_value is None and h_value is None:
            report = VertexRegret(Fraction(0), None, None, None)
            self._vertex_cache[m] = report
            return report
        g_candidates = tuple(t for t in left if t.value == g_value)
        h_candidates = tuple(t for t in mirrored if t.value == h_value)
        best_value = max(v for v in (g_value, h_value) if v is not None)
        ranked: list[tuple[_Term, bool]] = []
        if g_value == best_value:
            ranked += [(t, False) for t in g_candidates]
        if h_value == best_value:
            ranked += [(t, True) for t in h_candidates]
        witness = self._replay_pick(self.instance.positions[m], best_value, ranked)
        report = VertexRegret(
            best_value, g_value, h_value, witness, g_candidates, h_candidates
        )
        self._vertex_cache[m] = report
        return report

    def _replay_pick(
        self,
        x: Fraction,
        value: Fraction,
        candidates: list[tuple[_Term, bool]],
    ) -> Optional[Witness]:
        """Choose a witness among candidate terms, preferring one whose exact
        replay through the evacuation module reproduces `value` at `x`."""
        fallback: Optional[Witness] = None
        for term, is_mirror in candidates:
            source = self.reflected if is_mirror else self.instance
            for scenario, alpha, beta in _witness_scenarios(source, term):
                if is_mirror:
                    scenario, mapped = self._reflect_term_witness(scenario, term)
                else:
                    mapped = term
                witness = Witness(
                    mapped.family, mapped.i, mapped.j, mapped.edge, alpha, beta, scenario
                )
                if fallback is None:
                    fallback = witness
                replay = theta(self.instance, x, scenario).theta - optimal_sink(
                    self.instance, scenario
                ).value
                if replay == value:
                    return witness
        return fallback

    # -- arbitrary points

    def max_regret(self, x: Union[Point, RationalLike]) -> RegretReport:
        point = as_point(self.instance, x)
        if point.vertex_index is not None:
            report = self.vertex_regret(point.vertex_index)
            return RegretReport(report.value, point, report.witness)
        k = self.instance.locate(point.value)[1]
        g, h, value = self._interior_values(k, point.value)
        witness = self._interior_witness(k, point.value, g, h, value)
        return RegretReport(value, point, witness)

    def _interior_values(
        self, k: int, x: Fraction
    ) -> tuple[Optional[Fraction], Optional[Fraction], Fraction]:
        """Left/right family maxima strictly inside edge k, via the vertex
        values shifted by the travel offset."""
        right_vertex = self.vertex_regret(k + 1)
        left_vertex = self.vertex_regret(k)
        g = None
        if right_vertex.g_value is not None:
            g = right_vertex.g_value - (self.instance.positions[k + 1] - x)
        h = None
        if left_vertex.h_value is not None:
            h = left_vertex.h_value - (x - self.instance.positions[k])
        if g is None and h is None:
            return None, None, Fraction(0)
        value = max(v for v in (g, h) if v is not None)
        return g, h, value

    def _interior_witness(
        self,
        k: int,
        x: Fraction,
        g: Optional[Fraction],
        h: Optional[Fraction],
        value: Fraction,
    ) -> Optional[Witness]:
        candidates: list[tuple[_Term, bool]] = []
        if g is not None and g == value:
            candidates += [(t, False) for t in self.vertex_regret(k + 1).g_candidates]
        if h is not None and h == value:
            candidates += [(t, True) for t in self.vertex_regret(k).h_candidates]
        return self._replay_pick(x, value, candidates)

    # -- the outer search

    def _edge_minimum(self, u: int) -> tuple[Fraction, Fraction]:
        """(min of the max-regret over edge u, leftmost minimizing point)."""
        inst = self.instance
        xl, xr = inst.positions[u], inst.positions[u + 1]
        left_rep = self.vertex_regret(u)
        right_rep = self.vertex_regret(u + 1)
        candidates = [(left_rep.value, xl), (right_rep.value, xr)]
        g1 = right_rep.g_value
        h0 = left_rep.h_value
        if g1 is None and h0 is None:
            candidates.append((Fraction(0), xl))
        elif g1 is None:
            candidates.append((h0 - (xr - xl), xr))
        elif h0 is None:
            candidates.append((g1 - (xr - xl), xl))
        else:
            cross = (xl + xr + h0 - g1) / 2
            y = min(max(cross, xl), xr)
            candidates.append((max(g1 - (xr - y), h0 - (y - xl)), y))
        best = min(candidates, key=lambda c: (c[0], c[1]))
        return best[0], best[1]

    def min_max_regret(self) -> RegretReport:
        """Minmax regret over the whole path: binary search over per-edge
        minima of the unimodal max-regret, then exact edge-local minimization;
        returns the leftmost minimizer."""
        inst = self.instance
        if all(hi == 0 for hi in inst.weight_hi):
            return RegretReport(Fraction(0), Point(inst.positions[0], 0), None)
        if inst.n == 0:
            rep = self.vertex_regret(0)
            return RegretReport(rep.value, Point(inst.positions[0], 0), rep.witness)

        cache: dict[int, tuple[Fraction, Fraction]] = {}

        def edge_min(u: int) -> Fraction:
            if u not in cache:
                cache[u] = self._edge_minimum(u)
            return cache[u][0]

        lo, hi = 0, inst.n - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if edge_min(mid) <= edge_min(mid + 1):
                hi = mid
            else:
                lo = mid + 1
        best_value: Optional[Fraction] = None
        best_point: Optional[Fraction] = None
        for u in range(max(0, lo - 1), min(inst.n, lo + 2)):
            value, point = cache[u] if u in cache else self._edge_minimum(u)
            if best_value is None or value < best_value or (
                value == best_value and point < best_point
            ):
                best_value, best_point = value, point
        location = as_point(inst, best_point)
        report = self.max_regret(location)
        return RegretReport(best_value, location, report.witness)


def max_regret(instance: PathInstance, x: Union[Point, RationalLike]) -> RegretReport:
    return RegretSolver(instance).max_regret(x)


def min_max_regret(instance: PathInstance) -> RegretReport:
    return RegretSolver(instance).min_max_regret()
