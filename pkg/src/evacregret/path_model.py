"""Path instances, scenarios, and the exact-arithmetic primitives they support."""
from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Optional, Sequence, Union

RationalLike = Union[Fraction, int, str]


class PathModelError(ValueError):
    """Raised when an operation's precondition on the path model is violated."""


def to_fraction(value: RationalLike) -> Fraction:
    """Parse a rational given as a Fraction, int, "p/q" string, or decimal literal."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise PathModelError(f"not an exact rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    """Canonical gcd-reduced "p/q" (or plain "p") form."""
    return str(value)


def _ilog2(value: int) -> int:
    return value.bit_length() - 1


class RangeMin:
    """Sparse table answering range-minimum queries over a fixed array in O(1).

    Build cost is O(N log N).  Queries use half-open index ranges [start, stop).
    """

    def __init__(self, data: Sequence[Fraction]):
        length = len(data)
        self._table: list[list[Fraction]] = [list(data)]
        depth = 1
        while (1 << depth) <= length:
            prev = self._table[depth - 1]
            half = 1 << (depth - 1)
            self._table.append(
                [min(prev[i], prev[i + half]) for i in range(length - (1 << depth) + 1)]
            )
            depth += 1

    def query(self, start: int, stop: int) -> Optional[Fraction]:
        """Minimum of data[start:stop], or None when the range is empty."""
        if start >= stop:
            return None
        depth = _ilog2(stop - start)
        row = self._table[depth]
        return min(row[start], row[stop - (1 << depth)])


def range_min_scan(data: Sequence[Fraction], start: int, stop: int) -> Optional[Fraction]:
    """Linear-scan fallback with the same contract as RangeMin.query."""
    if start >= stop:
        return None
    return min(data[start:stop])


@dataclass(frozen=True)
class PathInstance:
    """An embedded path: vertex positions, edge capacities, per-vertex weight intervals.

    positions[0] must be 0 and positions strictly increasing; capacities has one
    entry per edge (one fewer than positions).  Construction only coerces types;
    call validate() to check the invariants.
    """

    positions: tuple[Fraction, ...]
    capacities: tuple[Fraction, ...]
    weight_lo: tuple[Fraction, ...]
    weight_hi: tuple[Fraction, ...]
    _lo_prefix: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _hi_prefix: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _cap_rmq: RangeMin = field(init=False, repr=False, compare=False)

    def __init__(
        self,
        positions: Iterable[RationalLike],
        capacities: Iterable[RationalLike],
        weight_lo: Iterable[RationalLike],
        weight_hi: Iterable[RationalLike],
    ):
        object.__setattr__(self, "positions", tuple(to_fraction(v) for v in positions))
        object.__setattr__(self, "capacities", tuple(to_fraction(v) for v in capacities))
        object.__setattr__(self, "weight_lo", tuple(to_fraction(v) for v in weight_lo))
        object.__setattr__(self, "weight_hi", tuple(to_fraction(v) for v in weight_hi))
        object.__setattr__(
            self, "_lo_prefix", tuple(accumulate(self.weight_lo, initial=Fraction(0)))
        )
        object.__setattr__(
            self, "_hi_prefix", tuple(accumulate(self.weight_hi, initial=Fraction(0)))
        )
        object.__setattr__(self, "_cap_rmq", RangeMin(self.capacities))

    def __hash__(self) -> int:
        # hashing tuples of Fractions is costly; cache it (instances are hot
        # cache keys throughout the solver)
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash(
                (self.positions, self.capacities, self.weight_lo, self.weight_hi)
            )
            object.__setattr__(self, "_hash", cached)
        return cached

    @property
    def n(self) -> int:
        """Number of edges."""
        return len(self.capacities)

    @property
    def vertex_count(self) -> int:
        return len(self.positions)

    @property
    def length(self) -> Fraction:
        return self.positions[-1] - self.positions[0]

    def edge_length(self, k: int) -> Fraction:
        return self.positions[k + 1] - self.positions[k]

    def lower_scenario(self) -> "Scenario":
        return Scenario(self.weight_lo)

    def locate(self, value: Fraction) -> tuple[str, int]:
        """Classify a point: ("vertex", j) if it coincides with x_j, else ("edge", k)
        for the edge whose open interior contains it."""
        if value < self.positions[0] or value > self.positions[-1]:
            raise PathModelError(f"point {value} outside [{self.positions[0]}, {self.positions[-1]}]")
        idx = bisect_left(self.positions, value)
        if self.positions[idx] == value:
            return ("vertex", idx)
        return ("edge", idx - 1)

    def last_vertex_at_or_left(self, value: Fraction) -> int:
        """max { i : x_i <= value }."""
        return bisect_right(self.positions, value) - 1

    def first_vertex_at_or_right(self, value: Fraction) -> int:
        """min { j : x_j >= value }."""
        return bisect_left(self.positions, value)


@dataclass(frozen=True)
class Scenario:
    """A concrete nonnegative weight assignment over the vertices."""

    weights: tuple[Fraction, ...]
    _prefix: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, weights: Iterable[RationalLike]):
        object.__setattr__(self, "weights", tuple(to_fraction(v) for v in weights))
        object.__setattr__(
            self, "_prefix", tuple(accumulate(self.weights, initial=Fraction(0)))
        )

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash(self.weights)
            object.__setattr__(self, "_hash", cached)
        return cached

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Point:
    """A point on the embedded path, optionally tagged with its vertex index."""

    value: Fraction
    vertex_index: Optional[int] = None

    def __init__(self, value: RationalLike, vertex_index: Optional[int] = None):
        object.__setattr__(self, "value", to_fraction(value))
        object.__setattr__(self, "vertex_index", vertex_index)


def as_point(instance: PathInstance, x: Union[Point, RationalLike]) -> Point:
    """Coerce to a Point within the path, resolving the vertex index if any."""
    value = x.value if isinstance(x, Point) else to_fraction(x)
    kind, idx = instance.locate(value)
    return Point(value, idx if kind == "vertex" else None)


# Validation ------------------------------------------------------------------


def validate(instance: PathInstance) -> list[str]:
    """Return all invariant violations (empty list means the instance is valid)."""
    errors: list[str] = []
    pos = instance.positions
    if not pos:
        errors.append("positions empty")
        return errors
    if pos[0] != 0:
        errors.append(f"positions[0] is {pos[0]}, expected 0")
    for i in range(len(pos) - 1):
        if pos[i] >= pos[i + 1]:
            errors.append(f"positions not strictly increasing at index {i}")
    if len(instance.capacities) != len(pos) - 1:
        errors.append(
            f"{len(instance.capacities)} capacities for {len(pos)} vertices "
            f"(expected {len(pos) - 1})"
        )
    for i, c in enumerate(instance.capacities):
        if c <= 0:
            errors.append(f"capacity {i} not positive")
    if len(instance.weight_lo) != len(pos) or len(instance.weight_hi) != len(pos):
        errors.append("weight interval arrays must have one entry per vertex")
    for i, (lo, hi) in enumerate(zip(instance.weight_lo, instance.weight_hi)):
        if lo < 0:
            errors.append(f"weight_lo[{i}] negative")
        if lo > hi:
            errors.append(f"weight interval {i} empty ({lo} > {hi})")
    return errors


def validated(instance: PathInstance) -> PathInstance:
    errors = validate(instance)
    if errors:
        raise PathModelError("; ".join(errors))
    return instance


# Scenario operations ---------------------------------------------------------


def prefix_weight(s: Scenario, i: int, j: int) -> Fraction:
    """W_{i,j}: the total weight on vertices i..j inclusive."""
    if not (0 <= i <= j < len(s.weights)):
        raise PathModelError(f"prefix_weight indices out of range: {i}, {j}")
    return s._prefix[j + 1] - s._prefix[i]


def is_legal(instance: PathInstance, s: Scenario) -> bool:
    return len(s.weights) == instance.vertex_count and all(
        lo <= w <= hi
        for lo, w, hi in zip(instance.weight_lo, s.weights, instance.weight_hi)
    )


def min_capacity(
    instance: PathInstance,
    x: Union[Point, RationalLike],
    x2: Union[Point, RationalLike],
) -> Optional[Fraction]:
    """Minimum edge capacity on the subpath spanning x..x2 (x <= x2).

    The spanned edge range is [max{i: x_i <= x}, min{j: x_j >= x2}).  When that
    range is empty (both points under the same vertex) the capacity is
    undefined; None is returned as the +infinity sentinel and callers must not
    divide by it.
    """
    a = x.value if isinstance(x, Point) else to_fraction(x)
    b = x2.value if isinstance(x2, Point) else to_fraction(x2)
    if a > b:
        raise PathModelError(f"min_capacity requires x <= x', got {a} > {b}")
    i = instance.last_vertex_at_or_left(a)
    j = instance.first_vertex_at_or_right(b)
    return instance._cap_rmq.query(i, j)


def min_capacity_scan(
    instance: PathInstance,
    x: Union[Point, RationalLike],
    x2: Union[Point, RationalLike],
) -> Optional[Fraction]:
    """Linear-scan reference for min_capacity (oracle-side)."""
    a = x.value if isinstance(x, Point) else to_fraction(x)
    b = x2.value if isinstance(x2, Point) else to_fraction(x2)
    if a > b:
        raise PathModelError(f"min_capacity requires x <= x', got {a} > {b}")
    i = instance.last_vertex_at_or_left(a)
    j = instance.first_vertex_at_or_right(b)
    return range_min_scan(instance.capacities, i, j)


def two_varying(
    instance: PathInstance, i: int, j: int, alpha: RationalLike, beta: RationalLike
) -> Scenario:
    """The scenario with free weights alpha at i and beta at j, lower bounds
    outside [i, j], and upper bounds strictly inside."""
    alpha = to_fraction(alpha)
    beta = to_fraction(beta)
    count = instance.vertex_count
    if not (0 <= i <= j < count):
        raise PathModelError(f"two_varying indices out of range: {i}, {j}")
    if i == j and alpha != beta:
        raise PathModelError("two_varying with i == j requires alpha == beta")
    if alpha < 0 or beta < 0:
        raise PathModelError("two_varying weights must be nonnegative")
    weights = list(instance.weight_lo)
    for t in range(i + 1, j):
        weights[t] = instance.weight_hi[t]
    weights[i] = alpha
    weights[j] = beta
    return Scenario(weights)


def substitute(s: Scenario, i: int, alpha: RationalLike) -> Scenario:
    """Copy of s with the weight at vertex i replaced by alpha."""
    alpha = to_fraction(alpha)
    if not (0 <= i < len(s.weights)):
        raise PathModelError(f"substitute index out of range: {i}")
    if alpha < 0:
        raise PathModelError("substitute weight must be nonnegative")
    if s.weights[i] == alpha:
        return s
    weights = list(s.weights)
    weights[i] = alpha
    return Scenario(weights)


def shift(
    instance: PathInstance, s: Scenario, i: int, j: int, delta: RationalLike
) -> Scenario:
    """Move delta units of weight from vertex i to vertex j.

    Valid only while w_i stays >= its lower bound and w_j stays <= its upper
    bound; oracle-side use only.
    """
    delta = to_fraction(delta)
    if delta < 0:
        raise PathModelError("shift requires delta >= 0")
    if not (0 <= i < len(s.weights) and 0 <= j < len(s.weights)):
        raise PathModelError(f"shift indices out of range: {i}, {j}")
    if s.weights[i] - delta < instance.weight_lo[i]:
        raise PathModelError(f"shift would push w_{i} below its lower bound")
    if s.weights[j] + delta > instance.weight_hi[j]:
        raise PathModelError(f"shift would push w_{j} above its upper bound")
    weights = list(s.weights)
    weights[i] -= delta
    weights[j] += delta
    return Scenario(weights)


# Mirror symmetry -------------------------------------------------------------


def reflect_instance(instance: PathInstance) -> PathInstance:
    """The left-right mirror image of the path (vertex k maps to n-k)."""
    end = instance.positions[-1]
    return PathInstance(
        positions=tuple(end - p for p in reversed(instance.positions)),
        capacities=tuple(reversed(instance.capacities)),
        weight_lo=tuple(reversed(instance.weight_lo)),
        weight_hi=tuple(reversed(instance.weight_hi)),
    )


def reflect_scenario(s: Scenario) -> Scenario:
    return Scenario(tuple(reversed(s.weights)))


def reflect_point(instance: PathInstance, x: Union[Point, RationalLike]) -> Point:
    value = x.value if isinstance(x, Point) else to_fraction(x)
    return Point(instance.positions[-1] - value)


# JSON instance / scenario formats --------------------------------------------


def parse_instance(data: Union[str, dict]) -> PathInstance:
    """Parse the JSON instance format.

    Vertices either carry explicit "position" fields or the document provides
    an "edge_lengths" array, in which case positions are its prefix sums.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        vertices = data["vertices"]
        capacities = [to_fraction(c) for c in data["capacities"]]
        weight_lo = [to_fraction(v["w_min"]) for v in vertices]
        weight_hi = [to_fraction(v["w_max"]) for v in vertices]
        if all("position" in v for v in vertices):
            positions = [to_fraction(v["position"]) for v in vertices]
        elif "edge_lengths" in data:
            lengths = [to_fraction(d) for d in data["edge_lengths"]]
            positions = list(accumulate(lengths, initial=Fraction(0)))
        else:
            raise PathModelError("vertices lack positions and no edge_lengths given")
    except (KeyError, TypeError) as exc:
        raise PathModelError(f"malformed instance document: {exc}") from exc
    return PathInstance(positions, capacities, weight_lo, weight_hi)


def emit_instance(instance: PathInstance) -> dict:
    return {
        "capacities": [format_fraction(c) for c in instance.capacities],
        "vertices": [
            {
                "position": format_fraction(p),
                "w_max": format_fraction(hi),
                "w_min": format_fraction(lo),
            }
            for p, lo, hi in zip(
                instance.positions, instance.weight_lo, instance.weight_hi
            )
        ],
    }


def parse_scenario(data: Union[str, dict]) -> Scenario:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return Scenario([to_fraction(w) for w in data["weights"]])
    except (KeyError, TypeError) as exc:
        raise PathModelError(f"malformed scenario document: {exc}") from exc


def emit_scenario(s: Scenario) -> dict:
    return {"weights": [format_fraction(w) for w in s.weights]}
