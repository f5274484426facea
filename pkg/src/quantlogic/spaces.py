"""Finite weighted point spaces and maps between them.

A ``Space`` is the integration domain everything else runs over: a nonempty
tuple of labelled points with nonnegative finite weights.  Weights are a
measure, not a distribution — nothing here normalizes behind your back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import QuantLogicError

# Slack for comparisons between floating-point weight sums.
_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class Space:
    """Finite weighted space: labelled points with nonnegative weights."""

    name: str
    points: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.points) == 0:
            raise QuantLogicError("EMPTY_SPACE", f"space {self.name!r} has no points")
        if len(self.points) != len(self.weights):
            raise QuantLogicError(
                "WEIGHT_COUNT",
                f"space {self.name!r}: {len(self.points)} points, {len(self.weights)} weights")
        if len(set(self.points)) != len(self.points):
            raise QuantLogicError("DUPLICATE_POINT",
                                  f"space {self.name!r} has duplicate point labels")
        for p, w in zip(self.points, self.weights):
            if math.isnan(w) or math.isinf(w):
                raise QuantLogicError("NONFINITE_WEIGHT",
                                      f"weight of {p!r} in {self.name!r} is {w!r}")
            if w < 0.0:
                raise QuantLogicError("NEGATIVE_WEIGHT",
                                      f"weight of {p!r} in {self.name!r} is {w!r}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights)

    @property
    def is_probability(self) -> bool:
        return abs(self.total_mass - 1.0) <= _WEIGHT_TOL

    def support(self) -> tuple[int, ...]:
        """Indices of the points with strictly positive weight."""
        return tuple(i for i, w in enumerate(self.weights) if w > 0.0)

    def index(self, point: str) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise QuantLogicError("UNKNOWN_POINT",
                                  f"no point {point!r} in space {self.name!r}") from None


def make_space(points, weights, name: str = "S") -> Space:
    return Space(name, tuple(str(p) for p in points), tuple(float(w) for w in weights))


def _point_labels(points) -> tuple[str, ...]:
    # an int n is shorthand for points labeled "0" .. "n-1"
    if isinstance(points, int):
        return tuple(str(i) for i in range(points))
    return tuple(str(p) for p in points)


def counting_space(points, name: str = "S") -> Space:
    """All weights 1 (so integrals are plain sums)."""
    pts = _point_labels(points)
    return Space(name, pts, (1.0,) * len(pts))


def uniform_space(points, name: str = "S") -> Space:
    """Probability space with equal weights."""
    pts = _point_labels(points)
    n = len(pts)
    if n == 0:
        raise QuantLogicError("EMPTY_SPACE", f"space {name!r} has no points")
    return Space(name, pts, (1.0 / n,) * n)


def product_space(a: Space, b: Space) -> Space:
    """Product with product weights; points in row-major order (a outer)."""
    points = tuple(f"({p},{q})" for p in a.points for q in b.points)
    weights = tuple(wa * wb for wa in a.weights for wb in b.weights)
    return Space(f"{a.name}x{b.name}", points, weights)


def normalize(a: Space) -> Space:
    """Rescale weights to total mass 1."""
    m = a.total_mass
    if m <= 0.0:
        raise QuantLogicError("ZERO_MASS", f"space {a.name!r} has zero total mass")
    return Space(a.name, a.points, tuple(w / m for w in a.weights))


@dataclass(frozen=True)
class PointMap:
    """A map of spaces: one target point per source point.

    ``assignment`` holds target indices, aligned with ``source.points``.
    """

    source: Space
    target: Space
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != len(self.source):
            raise QuantLogicError("MAP_ARITY",
                                  "assignment length differs from source size")
        for j in self.assignment:
            if not (0 <= j < len(self.target)):
                raise QuantLogicError("MAP_RANGE", f"target index {j} out of range")

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def fiber(self, j: int) -> tuple[int, ...]:
        """Source indices mapping onto target index j."""
        return tuple(i for i, t in enumerate(self.assignment) if t == j)

    @property
    def measure_non_increasing(self) -> bool:
        """True when every fiber's source mass is <= its target weight."""
        sums = pushforward_measure(self)
        return all(s <= w + _WEIGHT_TOL
                   for s, w in zip(sums, self.target.weights))


def point_map(source: Space, target: Space, labels) -> PointMap:
    """Build a PointMap from target point *labels* (one per source point)."""
    return PointMap(source, target, tuple(target.index(str(l)) for l in labels))


def identity_map(a: Space) -> PointMap:
    return PointMap(a, a, tuple(range(len(a))))


def compose(g: PointMap, f: PointMap) -> PointMap:
    """g after f (so f.target must be g.source)."""
    if f.target is not g.source and f.target != g.source:
        raise QuantLogicError("MAP_MISMATCH",
                              "composition needs f.target == g.source")
    return PointMap(f.source, g.target,
                    tuple(g.assignment[j] for j in f.assignment))


def pushforward_measure(f: PointMap) -> tuple[float, ...]:
    """Fiber-wise sums of source weights, as a measure on the target."""
    sums = [0.0] * len(f.target)
    for i, j in enumerate(f.assignment):
        sums[j] += f.source.weights[i]
    return tuple(sums)
