"""Depth-first enumeration of point sets on a small integer grid.

Cells are visited in row-major order, (y, x) lexicographic. A point placed
later in that order can never lie strictly between two earlier points (the
order is monotone along every line), so when a point is added its
visibility to the points already placed is final. Both the realizability
oracle and the catalog enumeration rely on this.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterator, Sequence

from .budget import Budget
from .errors import BudgetExceeded, InvalidInput
from .geometry import PointSet
from .graph import Graph
from .visibility import Embedding, build_pvg

GRID_SEARCH_LIMIT = 10

Cell = tuple[int, int]


def grid_cells(width: int, height: int) -> list[Cell]:
    if width < 1 or height < 1:
        raise InvalidInput("grid dimensions must be positive")
    return [(x, y) for y in range(height) for x in range(width)]


def visible_mask(q: Cell, placed: Sequence[Cell]) -> int:
    """Bitmask over ``placed`` of the points visible from ``q``.

    Valid only when ``q`` comes after every placed point in row-major order,
    since then ``q`` blocks nothing and only the nearest point on each ray
    from ``q`` is seen.
    """
    qx, qy = q
    nearest: dict[tuple[int, int], tuple[int, int]] = {}
    for idx, (px, py) in enumerate(placed):
        dx, dy = px - qx, py - qy
        g = gcd(dx, dy)
        key = (dx // g, dy // g)
        hit = nearest.get(key)
        if hit is None or g < hit[0]:
            nearest[key] = (g, idx)
    mask = 0
    for _, idx in nearest.values():
        mask |= 1 << idx
    return mask


class _DirectionTable:
    """Reduced direction and step count between every ordered pair of grid cells."""

    def __init__(self, cells: Sequence[Cell]) -> None:
        self.table = []
        for qx, qy in cells:
            row = []
            for px, py in cells:
                dx, dy = px - qx, py - qy
                g = gcd(dx, dy) or 1
                row.append(((dx // g, dy // g), g))
            self.table.append(row)

    def visible(self, q: int, placed: Sequence[int]) -> int:
        row = self.table[q]
        nearest: dict[tuple[int, int], tuple[int, int]] = {}
        for idx, c in enumerate(placed):
            key, g = row[c]
            hit = nearest.get(key)
            if hit is None or g < hit[0]:
                nearest[key] = (g, idx)
        mask = 0
        for _, idx in nearest.values():
            mask |= 1 << idx
        return mask


def _coords_gcd(cells: Sequence[Cell]) -> int:
    g = 0
    for x, y in cells:
        g = gcd(g, gcd(x, y))
    return g


# ---------------------------------------------------------------------------
# Realizability oracle
# ---------------------------------------------------------------------------


class SearchStatus(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMEOUT = "timeout"


@dataclass
class GridSearchResult:
    status: SearchStatus
    width: int
    height: int
    embedding: Embedding | None = None
    stats: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "status": self.status.value,
            "grid": [self.width, self.height],
            "stats": self.stats,
        }
        if self.embedding is not None:
            out["points"] = [list(p) for p in self.embedding.points]
        return out


def grid_search_embedding(
    g: Graph, width: int, height: int, budget: Budget | None = None
) -> GridSearchResult:
    """Search the ``width`` x ``height`` grid for points whose visibility graph is ``g``.

    Vertices are bound to cells as the cells are chosen in row-major order,
    and each binding must reproduce the adjacency to everything placed so
    far. The first hit in this order is returned, with point ``v`` of the
    embedding realising vertex ``v``. The embedding is translated so that
    its minimum x and y are both 0; any realisation in the grid has such a
    translate, so those are the only ones visited.
    """
    n = g.n
    if n > GRID_SEARCH_LIMIT:
        raise InvalidInput(f"grid search supports at most {GRID_SEARCH_LIMIT} vertices")
    if n == 0:
        raise InvalidInput("graph has no vertices")
    budget = budget or Budget()
    cells = grid_cells(width, height)
    total = len(cells)
    gm = g.masks
    placed: list[Cell] = []
    labels: list[int] = []

    def dfs(start: int, used: int) -> bool:
        depth = len(placed)
        if depth == n:
            return min(x for x, _ in placed) == 0
        first_row_only = depth == 0
        for ci in range(start, total - (n - depth) + 1):
            cell = cells[ci]
            if first_row_only and cell[1] != 0:
                break
            budget.tick()
            vis = visible_mask(cell, placed)
            want = 0
            for idx in range(depth):
                if vis >> idx & 1:
                    want |= 1 << labels[idx]
            for v in range(n):
                if used >> v & 1 or (gm[v] & used) != want:
                    continue
                placed.append(cell)
                labels.append(v)
                if dfs(ci + 1, used | 1 << v):
                    return True
                placed.pop()
                labels.pop()
        return False

    try:
        found = dfs(0, 0)
    except BudgetExceeded:
        return GridSearchResult(SearchStatus.TIMEOUT, width, height, stats=budget.stats())
    if not found:
        return GridSearchResult(SearchStatus.EXHAUSTED, width, height, stats=budget.stats())
    coords = [None] * n
    for cell, v in zip(placed, labels):
        coords[v] = cell
    emb = build_pvg(PointSet(coords))
    if emb.graph != g:
        raise AssertionError("grid search produced an embedding that does not round-trip")
    return GridSearchResult(SearchStatus.FOUND, width, height, emb, stats=budget.stats())


# ---------------------------------------------------------------------------
# Planar point-set enumeration
# ---------------------------------------------------------------------------


_PLANAR_MEMO: dict[tuple[int, int], bool] = {}


def _is_planar(n: int, edges: list[tuple[int, int]]) -> bool:
    if n >= 3 and len(edges) > 3 * n - 6:
        return False
    # with five vertices the edge bound is exact (only K5 fails)
    if n <= 5 or len(edges) < 9:
        return True
    key = 0
    for u, v in edges:
        key |= 1 << (u * 16 + v)
    hit = _PLANAR_MEMO.get((n, key))
    if hit is None:
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        hit = _PLANAR_MEMO[(n, key)] = nx.check_planarity(h)[0]
    return hit


def iter_planar_point_sets(
    n: int,
    width: int,
    height: int,
    first_cells: Sequence[int] | None = None,
    budget: Budget | None = None,
) -> Iterator[tuple[tuple[Cell, ...], list[tuple[int, int]]]]:
    """Yield every ``n``-point subset of the grid whose visibility graph is planar.

    Sets are reported in row-major lexicographic order, once per translation
    class (minimum x and y both 0) and only when primitive (the coordinates
    have no common factor; a scaled copy has the same visibility graph).
    Point ``i`` of each set is its ``i``-th cell in row-major order; the edge
    list uses those indices. ``first_cells`` restricts the first point.
    """
    if n < 1:
        raise InvalidInput("need at least one point")
    budget = budget or Budget.unlimited()
    cells = grid_cells(width, height)
    total = len(cells)
    dirs = _DirectionTable(cells)
    starts = list(first_cells) if first_cells is not None else [c for c in range(width)]
    placed: list[Cell] = []
    chosen: list[int] = []
    edges: list[tuple[int, int]] = []

    def dfs(start: int, collinear: bool) -> Iterator:
        depth = len(placed)
        if depth == n:
            if min(x for x, _ in placed) == 0 and _coords_gcd(placed) == 1:
                yield tuple(placed), list(edges)
            return
        remaining = n - depth - 1
        for ci in range(start, total - remaining):
            cell = cells[ci]
            budget.tick()
            vis = dirs.visible(ci, chosen)
            added = [(idx, depth) for idx in range(depth) if vis >> idx & 1]
            m = len(edges) + len(added)
            now_collinear = collinear and (depth < 2 or _on_line(placed[0], placed[1], cell))
            # each later point sees at least two earlier ones once the set spans the plane
            floor = m + remaining * (1 if now_collinear else 2)
            if n >= 3 and floor > 3 * n - 6:
                continue
            edges.extend(added)
            if depth + 1 >= 5 and added and not _is_planar(depth + 1, edges):
                del edges[len(edges) - len(added):]
                continue
            placed.append(cell)
            chosen.append(ci)
            yield from dfs(ci + 1, now_collinear)
            placed.pop()
            chosen.pop()
            del edges[len(edges) - len(added):]

    for s in starts:
        if s >= width:
            continue
        placed.append(cells[s])
        chosen.append(s)
        yield from dfs(s + 1, True)
        placed.pop()
        chosen.pop()


def _on_line(a: Cell, b: Cell, c: Cell) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0
