"""Independent brute-force validation: a time-stepped fluid simulation of
evacuation, grid enumeration of the two-varying scenario families, a dense
sweep for the minmax-regret location, and random weight-shift monotonicity
checks.  Everything here stays deliberately naive so it can vouch for the
closed forms."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Union

from .evacuation import optimal_sink, regret, theta
from .path_model import (
    PathInstance,
    PathModelError,
    Point,
    RationalLike,
    Scenario,
    as_point,
    is_legal,
    prefix_weight,
    shift,
    to_fraction,
    two_varying,
)


class OracleTimeout(RuntimeError):
    """The simulation exceeded its configured time cap."""


@dataclass(frozen=True)
class SimConfig:
    dt: Fraction
    max_time: Fraction

    def __init__(self, dt: RationalLike, max_time: RationalLike = 10_000):
        object.__setattr__(self, "dt", to_fraction(dt))
        object.__setattr__(self, "max_time", to_fraction(max_time))
        if self.dt <= 0:
            raise PathModelError("dt must be positive")


@dataclass(frozen=True)
class GridConfig:
    """Grid spacing for scenario enumeration; interval endpoints and zero are
    always included as anchors."""

    h: Fraction

    def __init__(self, h: RationalLike):
        object.__setattr__(self, "h", to_fraction(h))
        if self.h <= 0:
            raise PathModelError("grid spacing must be positive")


# Fluid simulation ---------------------------------------------------------------


def _simulate_chain(
    buffers: list[Fraction],
    capacities: list[Fraction],
    lengths: list[Fraction],
    dt: Fraction,
    max_steps: int,
) -> Fraction:
    """Simulate one directed chain of buffers feeding edge 0, 1, ... toward the
    sink at the far end; returns the arrival time of the last unit of flow.

    Per step, each edge admits min(buffer, capacity*dt) at its entry; admitted
    flow arrives (edge length) later, queued exactly.  All quantities are
    rescaled to integers so mass conservation is exact and fast.
    """
    if not buffers or all(b == 0 for b in buffers):
        return Fraction(0)
    # scale mass so buffers and per-step admissions are integers
    mass_scale = lcm(
        *(b.denominator for b in buffers),
        *((c * dt).denominator for c in capacities),
    )
    # scale time so dt and edge lengths are integers
    time_scale = lcm(dt.denominator, *(d.denominator for d in lengths))
    buf = [int(b * mass_scale) for b in buffers]
    quota = [int(c * dt * mass_scale) for c in capacities]
    travel = [int(d * time_scale) for d in lengths]
    dt_int = int(dt * time_scale)

    m = len(capacities)
    queues: list[list[tuple[int, int]]] = [[] for _ in range(m)]  # (arrival, amount)
    heads = [0] * m
    last_arrival = 0
    remaining = sum(buf)
    now = 0
    for _ in range(max_steps):
        # deliveries first: flow arriving now may be admitted downstream now
        for e in range(m):
            q, h = queues[e], heads[e]
            while h < len(q) and q[h][0] <= now:
                if e + 1 < m:
                    buf[e + 1] += q[h][1]
                else:
                    remaining -= q[h][1]
                    last_arrival = max(last_arrival, q[h][0])
                h += 1
            heads[e] = h
        if remaining == 0 and all(heads[e] == len(queues[e]) for e in range(m)):
            break
        for e in range(m):
            take = min(buf[e], quota[e])
            if take > 0:
                buf[e] -= take
                queues[e].append((now + travel[e], take))
        now += dt_int
    else:
        raise OracleTimeout("simulation did not drain within max_time")
    return Fraction(last_arrival, time_scale)


def simulate_evacuation(
    instance: PathInstance,
    x: Union[Point, RationalLike],
    s: Scenario,
    cfg: SimConfig,
) -> Fraction:
    """Fluid-model evacuation time to x, first-order accurate in cfg.dt.

    The two sides of the sink drain independently; the result is rounded up to
    a step boundary.
    """
    point = as_point(instance, x)
    if prefix_weight(s, 0, instance.n) == 0:
        return Fraction(0)
    max_steps = int(cfg.max_time / cfg.dt) + 1
    pos = instance.positions
    kind, idx = instance.locate(point.value)

    if kind == "vertex":
        left_top, right_low = idx, idx
        left_extra = None
        right_extra = None
    else:
        left_top, right_low = idx + 1, idx
        left_extra = (instance.capacities[idx], point.value - pos[idx])
        right_extra = (instance.capacities[idx], pos[idx + 1] - point.value)

    # left chain: vertices 0..left_top-1 (or ..idx for interior) moving right
    if kind == "vertex":
        lbuf = [s.weights[t] for t in range(idx)]
        lcap = [instance.capacities[t] for t in range(idx)]
        llen = [pos[t + 1] - pos[t] for t in range(idx)]
    else:
        lbuf = [s.weights[t] for t in range(idx + 1)]
        lcap = [instance.capacities[t] for t in range(idx)] + [left_extra[0]]
        llen = [pos[t + 1] - pos[t] for t in range(idx)] + [left_extra[1]]
    left_time = _simulate_chain(lbuf, lcap, llen, cfg.dt, max_steps)

    # right chain mirrored
    n = instance.n
    if kind == "vertex":
        rbuf = [s.weights[t] for t in range(n, idx, -1)]
        rcap = [instance.capacities[t - 1] for t in range(n, idx, -1)]
        rlen = [pos[t] - pos[t - 1] for t in range(n, idx, -1)]
    else:
        rbuf = [s.weights[t] for t in range(n, idx, -1)]
        rcap = [instance.capacities[t - 1] for t in range(n, idx + 1, -1)] + [right_extra[0]]
        rlen = [pos[t] - pos[t - 1] for t in range(n, idx + 1, -1)] + [right_extra[1]]
    right_time = _simulate_chain(rbuf, rcap, rlen, cfg.dt, max_steps)

    raw = max(left_time, right_time)
    steps, rem = divmod(raw, cfg.dt)
    return (steps + (1 if rem else 0)) * cfg.dt


# Grid enumeration ----------------------------------------------------------------


def _axis_grid(lo: Fraction, hi: Fraction, h: Fraction) -> list[Fraction]:
    values = {lo, hi}
    if lo <= 0 <= hi:
        values.add(Fraction(0))
    step = lo
    while step < hi:
        values.add(step)
        step += h
    return sorted(values)


class GridOracle:
    """Enumerates all two-varying grid scenarios of an instance once, caching
    each scenario's optimal evacuation time, so max-regret queries at several
    sinks stay cheap."""

    def __init__(self, instance: PathInstance, cfg: GridConfig):
        self.instance = instance
        self.cfg = cfg
        self.scenarios: list[tuple[Scenario, Fraction]] = []
        seen: set[tuple[Fraction, ...]] = set()
        count = instance.vertex_count
        for i in range(count):
            for j in range(i, count):
                a_grid = _axis_grid(instance.weight_lo[i], instance.weight_hi[i], cfg.h)
                b_grid = _axis_grid(instance.weight_lo[j], instance.weight_hi[j], cfg.h)
                for a in a_grid:
                    betas = [a] if i == j else b_grid
                    for b in betas:
                        s = two_varying(instance, i, j, a, b)
                        if s.weights in seen:
                            continue
                        seen.add(s.weights)
                        self.scenarios.append((s, optimal_sink(instance, s).value))

    def max_regret(self, x: Union[Point, RationalLike]) -> Fraction:
        point = as_point(self.instance, x)
        best = Fraction(0)
        for s, opt in self.scenarios:
            value = theta(self.instance, point, s).theta - opt
            if value > best:
                best = value
        return best


def grid_rmax(
    instance: PathInstance, x: Union[Point, RationalLike], cfg: GridConfig
) -> Fraction:
    """Max regret at x over the gridded two-varying scenario families."""
    return GridOracle(instance, cfg).max_regret(x)


def sweep_ropt(
    instance: PathInstance, cfg: GridConfig, x_samples: int
) -> tuple[Point, Fraction]:
    """Min over vertices plus uniform interior samples of the gridded max
    regret; a lower-bounds check for the exact search."""
    if x_samples < instance.vertex_count:
        raise PathModelError("x_samples must be at least the vertex count")
    oracle = GridOracle(instance, cfg)
    points = set(instance.positions)
    total = instance.positions[-1] - instance.positions[0]
    for t in range(1, x_samples):
        points.add(instance.positions[0] + total * Fraction(t, x_samples))
    best_point: Optional[Fraction] = None
    best_value: Optional[Fraction] = None
    for p in sorted(points):
        value = oracle.max_regret(p)
        if best_value is None or value < best_value:
            best_point, best_value = p, value
    return as_point(instance, best_point), best_value


# Random weight-shift monotonicity -------------------------------------------------


def _random_rational(rng: random.Random, lo: Fraction, hi: Fraction, denom: int = 16) -> Fraction:
    span = hi - lo
    return lo + span * Fraction(rng.randint(0, denom), denom)


def random_legal_scenario(
    instance: PathInstance, rng: random.Random, denom: int = 16
) -> Scenario:
    return Scenario(
        [
            _random_rational(rng, lo, hi, denom)
            for lo, hi in zip(instance.weight_lo, instance.weight_hi)
        ]
    )


@dataclass(frozen=True)
class ShiftReport:
    trials: int
    performed: int
    violations: int


def check_shift(instance: PathInstance, trials: int, seed: int = 0) -> ShiftReport:
    """Random valid weight shifts between two vertices: moving weight toward
    the far side of the sink never increases the evacuation time.  Checks both
    orientations; reports the violation count (expected zero)."""
    rng = random.Random(seed)
    performed = 0
    violations = 0
    count = instance.vertex_count
    if count < 2:
        return ShiftReport(trials, 0, 0)
    for _ in range(trials):
        s = random_legal_scenario(instance, rng)
        a, b = rng.sample(range(count), 2)
        toward_right = rng.random() < 0.5
        src, dst = (min(a, b), max(a, b)) if toward_right else (max(a, b), min(a, b))
        room = min(
            s.weights[src] - instance.weight_lo[src],
            instance.weight_hi[dst] - s.weights[dst],
        )
        if room < 0:
            continue
        delta = room * Fraction(rng.randint(0, 8), 8)
        shifted = shift(instance, s, src, dst, delta)
        performed += 1
        # sinks on the far side of the receiving vertex
        if toward_right:
            sink_lo = instance.positions[dst]
            sink = _random_rational(rng, sink_lo, instance.positions[-1], 8)
        else:
            sink = _random_rational(rng, instance.positions[0], instance.positions[dst], 8)
        before = theta(instance, sink, s).theta
        after = theta(instance, sink, shifted).theta
        if after > before:
            violations += 1
    return ShiftReport(trials, performed, violations)
