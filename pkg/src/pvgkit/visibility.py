"""Point visibility graphs: angular-sweep construction, cubic oracle, collinear runs."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import InvalidInput
from .geometry import Point, PointSet, compare_directions, angular_order
from .graph import Graph, Pair


class BlockerMap(Mapping[Pair, tuple[int, ...]]):
    """Points strictly inside segment ``p_i p_j`` for each invisible pair.

    Keys are stored with ``i < j`` and lists run from ``p_i`` to ``p_j``;
    :meth:`between` returns the list oriented for either argument order.
    """

    __slots__ = ("_data",)

    def __init__(self, data: Mapping[Pair, Iterable[int]] | None = None) -> None:
        self._data: dict[Pair, tuple[int, ...]] = {}
        for (i, j), chain in (data or {}).items():
            chain = tuple(chain)
            if i > j:
                i, j, chain = j, i, chain[::-1]
            self._data[(i, j)] = chain

    def between(self, i: int, j: int) -> tuple[int, ...]:
        if i < j:
            return self._data.get((i, j), ())
        return self._data.get((j, i), ())[::-1]

    def __getitem__(self, key: Pair) -> tuple[int, ...]:
        i, j = key
        if (min(i, j), max(i, j)) not in self._data:
            raise KeyError(key)
        return self.between(i, j)

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self._data))

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BlockerMap):
            return self._data == other._data
        return NotImplemented

    def __repr__(self) -> str:
        return f"BlockerMap({dict(sorted(self._data.items()))})"


@dataclass(frozen=True)
class Embedding:
    points: PointSet
    graph: Graph
    blockers: BlockerMap

    @property
    def n(self) -> int:
        return len(self.points)

    def round_trip_ok(self) -> bool:
        """True iff ``graph`` is exactly the visibility graph of ``points``."""
        return build_pvg(self.points).graph == self.graph


def _as_point_set(points: PointSet | Iterable) -> PointSet:
    return points if isinstance(points, PointSet) else PointSet(points)


# ---------------------------------------------------------------------------
# Angular sweep
# ---------------------------------------------------------------------------


def build_pvg(points: PointSet | Iterable) -> Embedding:
    """Visibility graph by sorting the other points around each pivot.

    Along each ray from the pivot only the nearest point is visible; every
    farther point on the ray is blocked by all nearer ones, which gives the
    blocker chains directly. O(n^2 log n); pivots are swept in vectorised
    chunks.
    """
    pts = _as_point_set(points)
    n = len(pts)
    if n == 0:
        raise InvalidInput("need at least one point")
    xs = np.fromiter((p.x for p in pts), dtype=np.int64, count=n)
    ys = np.fromiter((p.y for p in pts), dtype=np.int64, count=n)
    adj: list[tuple[int, ...]] = []
    blockers: dict[Pair, tuple[int, ...]] = {}
    chunk = max(1, _CHUNK_CELLS // n)
    for lo in range(0, n, chunk):
        pivots = np.arange(lo, min(n, lo + chunk))
        piv, order, starts, sizes = _sweep(xs, ys, pivots)
        visible = np.zeros((len(pivots), n), dtype=bool)
        visible[piv[starts] - lo, order[starts]] = True
        adj.extend(tuple(np.flatnonzero(row).tolist()) for row in visible)
        for s in np.flatnonzero(sizes > 1).tolist():
            i = int(piv[starts[s]])
            ray = order[starts[s]: starts[s] + sizes[s]].tolist()
            for r in range(1, len(ray)):
                j = ray[r]
                if i < j:
                    blockers[(i, j)] = tuple(ray[:r])
    return Embedding(pts, Graph._trusted(adj), BlockerMap(blockers))


_CHUNK_CELLS = 1 << 19


def _sweep(xs: np.ndarray, ys: np.ndarray, pivots: np.ndarray):
    """Angular sweep around each pivot in ``pivots`` at once.

    Returns flat arrays: the pivot of each entry, the other point's index in
    angular order, and the start offset and length of each ray (a run of
    equal reduced direction from the same pivot).
    """
    n = len(xs)
    c = len(pivots)
    dx = xs[None, :] - xs[pivots, None]
    dy = ys[None, :] - ys[pivots, None]
    self_cell = (np.arange(c), pivots)
    g = np.gcd(dx, dy)
    g[self_cell] = 1
    rx = dx // g
    ry = dy // g
    # the float angle only orders distinct rays; ray membership is decided
    # by the exact reduced direction (rx, ry), and g is the exact distance rank
    angle = np.arctan2(ry.astype(np.float64), rx.astype(np.float64))
    angle[angle < 0] += 2 * np.pi
    angle[self_cell] = -1.0
    perm = np.lexsort((g, angle), axis=1)
    rx_s = np.take_along_axis(rx, perm, axis=1)
    ry_s = np.take_along_axis(ry, perm, axis=1)
    ang_s = np.take_along_axis(angle, perm, axis=1)
    # distinct directions whose float angles collide could interleave; re-sort
    # those rows with the exact direction as a tie-breaker
    clash = (ang_s[:, 1:] == ang_s[:, :-1]) & ((rx_s[:, 1:] != rx_s[:, :-1]) | (ry_s[:, 1:] != ry_s[:, :-1]))
    bad = np.flatnonzero(clash.any(axis=1))
    if len(bad):
        fix = np.lexsort((g[bad], ry[bad], rx[bad], angle[bad]), axis=1)
        perm[bad] = fix
        rx_s[bad] = np.take_along_axis(rx[bad], fix, axis=1)
        ry_s[bad] = np.take_along_axis(ry[bad], fix, axis=1)
    perm, rx, ry = perm, rx_s, ry_s
    # drop the pivot itself (sorted first by its -1 angle)
    perm, rx, ry = perm[:, 1:], rx[:, 1:], ry[:, 1:]
    piv = np.repeat(pivots, n - 1)
    other = perm.ravel()
    rx, ry = rx.ravel(), ry.ravel()
    if len(other) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty
    new_ray = np.empty(len(other), dtype=bool)
    new_ray[0] = True
    new_ray[1:] = (rx[1:] != rx[:-1]) | (ry[1:] != ry[:-1]) | (piv[1:] != piv[:-1])
    starts = np.flatnonzero(new_ray)
    sizes = np.diff(np.append(starts, len(other)))
    return piv, other, starts, sizes


def build_pvg_naive(points: PointSet | Iterable) -> Embedding:
    """Cubic reference: test every third point against every segment."""
    pts = _as_point_set(points)
    n = len(pts)
    if n == 0:
        raise InvalidInput("need at least one point")
    coords = pts.coords()
    edges = []
    blockers: dict[Pair, tuple[int, ...]] = {}
    for i in range(n):
        xi, yi = coords[i]
        for j in range(i + 1, n):
            xj, yj = coords[j]
            dx, dy = xj - xi, yj - yi
            length = dx * dx + dy * dy
            inside = []
            for k in range(n):
                if k == i or k == j:
                    continue
                mx, my = coords[k][0] - xi, coords[k][1] - yi
                if dx * my - dy * mx:
                    continue
                dot = mx * dx + my * dy
                if 0 < dot < length:
                    inside.append((dot, k))
            if inside:
                inside.sort()
                blockers[(i, j)] = tuple(k for _, k in inside)
            else:
                edges.append((i, j))
    return Embedding(pts, Graph(n, edges), BlockerMap(blockers))


# ---------------------------------------------------------------------------
# Collinear runs
# ---------------------------------------------------------------------------


def line_key(p: Point, q: Point) -> tuple[int, int, int]:
    """Reduced integer coefficients (a, b, c) of the line a*x + b*y + c = 0
    through p and q, normalised so that a > 0 or (a == 0 and b > 0)."""
    a = q.y - p.y
    b = p.x - q.x
    g = gcd(a, b)
    a //= g
    b //= g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b, -(a * p.x + b * p.y)


def maximal_gsps(points: PointSet | Iterable) -> list[tuple[int, ...]]:
    """Every line through at least three points, as indices sorted along the line.

    Output is ordered by the normalised line coefficients.
    """
    pts = _as_point_set(points)
    n = len(pts)
    lines: dict[tuple[int, int, int], set[int]] = {}
    for i in range(n):
        pi = pts[i]
        by_dir: dict[tuple[int, int], list[int]] = {}
        for j in range(i + 1, n):
            dx, dy = pts[j] - pi
            g = gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            by_dir.setdefault((dx, dy), []).append(j)
        for members in by_dir.values():
            if len(members) >= 2:
                key = line_key(pi, pts[members[0]])
                if key not in lines:
                    lines[key] = {i, *members}
    out = []
    for key in sorted(lines):
        out.append(tuple(sorted(lines[key], key=lambda k: (pts[k].x, pts[k].y))))
    return out


# ---------------------------------------------------------------------------
# Ray orders
# ---------------------------------------------------------------------------


def ray_order(emb: Embedding, i: int) -> list[int]:
    """Visible neighbours of ``p_i`` as a linear order in which consecutive
    rays make an angle below 180 degrees.

    The circular counterclockwise order is cut at its widest gap when that
    gap is at least a half-turn (hull points); otherwise at direction +x.
    """
    pts = emb.points
    pivot = pts[i]
    nbs = list(emb.graph.adj[i])
    if len(nbs) <= 1:
        return nbs
    index = {pts[v]: v for v in nbs}
    ordered = [index[p] for p in angular_order(pivot, [pts[v] for v in nbs])]
    d = len(ordered)
    for s in range(d):
        a = pts[ordered[s]] - pivot
        b = pts[ordered[(s + 1) % d]] - pivot
        c = a[0] * b[1] - a[1] * b[0]
        reflex = c < 0 or (c == 0 and compare_directions(a, b) != 0)
        if reflex:
            return ordered[s + 1:] + ordered[: s + 1]
    return ordered
