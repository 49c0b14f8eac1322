"""Exact integer predicates on planar points.

Every predicate here works on Python integers only; there is no floating
point anywhere in the decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput

COORD_LIMIT = 1 << 30


@dataclass(frozen=True, order=True, slots=True)
class Point:
    x: int
    y: int

    def __post_init__(self) -> None:
        for value in (self.x, self.y):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInput(f"coordinates must be integers, got {value!r}")
            if abs(value) > COORD_LIMIT:
                raise InvalidInput(f"coordinate {value} exceeds the bound 2**30")

    def __sub__(self, other: Point) -> tuple[int, int]:
        return (self.x - other.x, self.y - other.y)

    def __iter__(self) -> Iterator[int]:
        yield self.x
        yield self.y


class PointSet(Sequence[Point]):
    """Ordered collection of pairwise distinct points; index ``i`` is ``p_i``."""

    __slots__ = ("_points",)

    def __init__(self, points: Iterable[Point | tuple[int, int]]) -> None:
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in points)
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise InvalidInput(f"points {seen[p]} and {i} coincide at ({p.x}, {p.y})")
            seen[p] = i
        self._points = pts

    def __getitem__(self, index):  # type: ignore[override]
        return self._points[index]

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet):
            return self._points == other._points
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"PointSet({[(p.x, p.y) for p in self._points]})"

    def coords(self) -> list[tuple[int, int]]:
        return [(p.x, p.y) for p in self._points]


def cross(ax: int, ay: int, bx: int, by: int) -> int:
    return ax * by - ay * bx


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (det > 0) - (det < 0)


def strictly_between(a: Point, m: Point, b: Point) -> bool:
    """True iff ``m`` lies on the open segment ``ab``."""
    if a == b:
        raise InvalidInput("degenerate segment: endpoints coincide")
    dx, dy = b.x - a.x, b.y - a.y
    mx, my = m.x - a.x, m.y - a.y
    if dx * my - dy * mx != 0:
        return False
    dot = mx * dx + my * dy
    return 0 < dot < dx * dx + dy * dy


def _half(dx: int, dy: int) -> int:
    # 0 for directions in [0, pi), 1 for [pi, 2pi), measured from +x
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def compare_directions(u: tuple[int, int], v: tuple[int, int]) -> int:
    """Counterclockwise angular comparison of two nonzero vectors from +x.

    Returns 0 when the vectors point the same way (regardless of length).
    """
    hu, hv = _half(*u), _half(*v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u[0], u[1], v[0], v[1])
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def angular_order(pivot: Point, others: Iterable[Point]) -> list[Point]:
    """Sort ``others`` counterclockwise around ``pivot`` starting at direction (+1, 0).

    Points on a common ray from the pivot come out consecutively, nearest first.
    """
    pts = list(others)
    if pivot in pts:
        raise InvalidInput("pivot must not appear among the points being ordered")
    if len(set(pts)) != len(pts):
        raise InvalidInput("points must be distinct")

    def cmp(p: Point, q: Point) -> int:
        u, v = p - pivot, q - pivot
        c = compare_directions(u, v)
        if c:
            return c
        du = u[0] * u[0] + u[1] * u[1]
        dv = v[0] * v[0] + v[1] * v[1]
        return (du > dv) - (du < dv)

    return sorted(pts, key=cmp_to_key(cmp))
