"""Small named graphs and point sets used as reference cases.

Vertex ``v_i`` of the published drawings is vertex ``i`` here, except where
the drawing numbers from 1, in which case everything shifts down by one.
"""

from __future__ import annotations

from .geometry import PointSet
from .graph import Graph
from .visibility import build_pvg


def thirteen_points() -> PointSet:
    """Origin plus three rows of four points on the rays through (i, 1), i = 1..4."""
    pts = [(0, 0)]
    for scale in (1, 2, 3):
        pts.extend((scale * i, scale) for i in range(1, 5))
    return PointSet(pts)


def thirteen_graph() -> Graph:
    return build_pvg(thirteen_points()).graph


def swapped_thirteen_graph() -> Graph:
    """The 13-vertex graph with edges 9-10 and 11-12 traded for 9-11 and 10-12.

    Passes the first two necessary conditions but has no visibility embedding.
    """
    edges = set(thirteen_graph().edges())
    edges -= {(9, 10), (11, 12)}
    edges |= {(9, 11), (10, 12)}
    return Graph(13, sorted(edges))


# (pair, interior chain) for every invisible pair of the swapped graph
SWAPPED_THIRTEEN_ASSIGNMENT: tuple[tuple[tuple[int, int], tuple[int, ...]], ...] = (
    ((0, 5), (1,)),
    ((0, 9), (1, 5)),
    ((1, 9), (5,)),
    ((0, 6), (2,)),
    ((0, 10), (2, 6)),
    ((2, 10), (6,)),
    ((0, 7), (3,)),
    ((0, 11), (3, 7)),
    ((3, 11), (7,)),
    ((0, 8), (4,)),
    ((0, 12), (4, 8)),
    ((4, 12), (8,)),
    ((1, 3), (2,)),
    ((1, 4), (2, 3)),
    ((2, 4), (3,)),
    ((5, 7), (6,)),
    ((5, 8), (6, 7)),
    ((6, 8), (7,)),
    ((9, 10), (11,)),
    ((9, 12), (11, 10)),
    ((11, 12), (10,)),
)


def chorded_p5() -> Graph:
    """Path v1..v5 plus the chord v2-v4 (0-indexed: path 0..4, chord 1-3)."""
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
