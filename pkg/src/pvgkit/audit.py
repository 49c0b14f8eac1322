"""Geometric audits of visibility embeddings.

Convex layers, the layer-splicing Hamiltonian cycle, blocker counting
between mutually invisible sets, and a suite re-checking the structural
facts every PVG must satisfy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import InvalidInput
from .geometry import Point, PointSet, orientation
from .graph import (
    Graph,
    bfs_levels,
    brute_max_clique,
    diameter_at_most,
    edge_lower_bound,
    is_bipartite,
    is_connected,
    is_path_graph,
    is_triangle_free,
    min_degree_bound,
    neighborhood_connected,
)
from .visibility import Embedding, build_pvg, maximal_gsps

# ---------------------------------------------------------------------------
# Convex layers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexLayers:
    """Layers from the outside in; each is counterclockwise, except that the
    innermost is a path along its line when its points are collinear."""

    layers: tuple[tuple[int, ...], ...]
    innermost_is_path: bool

    def __len__(self) -> int:
        return len(self.layers)

    def sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]


def _hull_with_collinear(pts: Sequence[Point], idx: list[int]) -> list[int]:
    """Counterclockwise hull keeping every point on a hull edge (monotone chain)."""
    order = sorted(idx, key=lambda i: (pts[i].x, pts[i].y))

    def chain(seq: list[int]) -> list[int]:
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orientation(pts[out[-2]], pts[out[-1]], pts[i]) < 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    return lower[:-1] + upper[:-1]


def _collinear(pts: Sequence[Point], idx: list[int]) -> bool:
    if len(idx) <= 2:
        return True
    a, b = pts[idx[0]], pts[idx[1]]
    return all(orientation(a, b, pts[i]) == 0 for i in idx[2:])


def convex_layers(points: PointSet | Iterable) -> ConvexLayers:
    pts = points if isinstance(points, PointSet) else PointSet(points)
    if len(pts) == 0:
        raise InvalidInput("need at least one point")
    remaining = list(range(len(pts)))
    layers: list[tuple[int, ...]] = []
    while remaining:
        if _collinear(pts, remaining):
            layers.append(tuple(sorted(remaining, key=lambda i: (pts[i].x, pts[i].y))))
            return ConvexLayers(tuple(layers), True)
        hull = _hull_with_collinear(pts, remaining)
        layers.append(tuple(hull))
        on_hull = set(hull)
        remaining = [i for i in remaining if i not in on_hull]
    return ConvexLayers(tuple(layers), False)


# ---------------------------------------------------------------------------
# Hamiltonian cycle
# ---------------------------------------------------------------------------


class _Cycle:
    """Undirected cycle kept as a neighbour-pair map."""

    def __init__(self, order: Sequence[int]) -> None:
        self.nb: dict[int, list[int]] = {}
        k = len(order)
        for t, v in enumerate(order):
            self.nb[v] = [order[t - 1], order[(t + 1) % k]]

    def has(self, a: int, b: int) -> bool:
        return b in self.nb.get(a, ())

    def swap(self, a: int, b: int, c: int, d: int) -> None:
        """Replace edge a-b by a-c, and edge c-d by b-d."""
        self.nb[a][self.nb[a].index(b)] = c
        self.nb[b][self.nb[b].index(a)] = d
        self.nb[c][self.nb[c].index(d)] = a
        self.nb[d][self.nb[d].index(c)] = b

    def merge(self, other: _Cycle) -> None:
        self.nb.update(other.nb)

    def insert_path(self, a: int, b: int, path: Sequence[int]) -> None:
        """Replace edge a-b by a-path[0]-...-path[-1]-b."""
        self.nb[a][self.nb[a].index(b)] = path[0]
        self.nb[b][self.nb[b].index(a)] = path[-1]
        for t, v in enumerate(path):
            left = a if t == 0 else path[t - 1]
            right = b if t == len(path) - 1 else path[t + 1]
            self.nb[v] = [left, right]

    def walk(self) -> list[int]:
        start = min(self.nb)
        a, b = self.nb[start]
        out = [start]
        prev, cur = start, min(a, b)
        while cur != start:
            out.append(cur)
            x, y = self.nb[cur]
            prev, cur = cur, (y if x == prev else x)
        return out


def _left_tangent(pts: Sequence[Point], apex: int, layer: Sequence[int]) -> int:
    """Point t of ``layer`` with the whole layer on the left of ray apex->t
    (the nearest such point when several are collinear with the apex)."""
    best = None
    for t in layer:
        if all(orientation(pts[apex], pts[t], pts[q]) >= 0 for q in layer):
            if best is None or _dist2(pts[apex], pts[t]) < _dist2(pts[apex], pts[best]):
                best = t
    if best is None:
        raise AssertionError("no tangent from a point outside a convex layer")
    return best


def _dist2(a: Point, b: Point) -> int:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


@dataclass
class HamiltonianCycle:
    cycle: list[int]
    # per layer merge: which rule connected it ("a", "b", "c", "path" or "fallback")
    steps: list[str] = field(default_factory=list)


def validate_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    if len(cycle) != g.n or sorted(cycle) != list(range(g.n)) or g.n < 3:
        return False
    return all(g.has_edge(cycle[t - 1], cycle[t]) for t in range(g.n))


def hamiltonian_cycle(emb: Embedding) -> list[int]:
    return hamiltonian_cycle_steps(emb).cycle


def hamiltonian_cycle_steps(emb: Embedding) -> HamiltonianCycle:
    """Splice the convex layers into one cycle, outermost first.

    For an edge p_i p_j of the previous layer (p_j clockwise after p_i) the
    left tangents from p_i and p_j touch the next layer at p_l and p_m:
    (a) p_l = p_m: with p_t clockwise after p_l, swap p_i p_j, p_l p_t for
    p_i p_l, p_j p_t; (b) p_l p_m a layer edge: swap for p_i p_l, p_j p_m;
    (c) otherwise, with p_q counterclockwise before p_m, swap p_i p_j,
    p_q p_m for p_i p_q, p_j p_m. Previous-layer edges are tried in
    lexicographic order until the new edges are visible; if none works a
    generic search over edge pairs is used and recorded as "fallback". A
    collinear innermost layer is inserted into any cycle edge whose ends see
    its two ends.
    """
    g = emb.graph
    if is_path_graph(g):
        raise InvalidInput("a path graph has no Hamiltonian cycle")
    pts = emb.points
    cl = convex_layers(pts)
    layers = [list(layer) for layer in cl.layers]
    cyc = _Cycle(layers[0])
    steps: list[str] = []
    for t in range(1, len(layers)):
        prev, layer = layers[t - 1], layers[t]
        if t == len(layers) - 1 and cl.innermost_is_path:
            steps.append(_insert_path(g, cyc, prev, layer))
            continue
        steps.append(_splice_layer(g, pts, cyc, prev, layer))
    cycle = cyc.walk()
    if not validate_cycle(g, cycle):
        raise AssertionError("layer splicing produced an invalid cycle")
    return HamiltonianCycle(cycle, steps)


def _prev_layer_edges(cyc: _Cycle, prev: Sequence[int]) -> list[tuple[int, int]]:
    """Edges of the previous layer still on the cycle, as (p_i, p_j) with p_j
    clockwise after p_i, in lexicographic order of the unordered pair."""
    k = len(prev)
    out = []
    for s in range(k):
        a, b = prev[s], prev[(s + 1) % k]
        # layers are counterclockwise, so a is clockwise after b
        if cyc.has(a, b):
            out.append((b, a))
    return sorted(out, key=lambda e: (min(e), max(e)))


def _splice_layer(g: Graph, pts: Sequence[Point], cyc: _Cycle, prev: Sequence[int], layer: Sequence[int]) -> str:
    k = len(layer)
    pos = {v: s for s, v in enumerate(layer)}
    inner = _Cycle(layer)

    def cw_next(v: int) -> int:
        return layer[(pos[v] - 1) % k]

    def ccw_next(v: int) -> int:
        return layer[(pos[v] + 1) % k]

    for pi, pj in _prev_layer_edges(cyc, prev):
        pl = _left_tangent(pts, pi, layer)
        pm = _left_tangent(pts, pj, layer)
        if pl == pm:
            case, x, y = "a", pl, cw_next(pl)
        elif cw_next(pl) == pm or ccw_next(pl) == pm:
            case, x, y = "b", pl, pm
        else:
            case, x, y = "c", ccw_next(pm), pm
        if g.has_edge(pi, x) and g.has_edge(pj, y):
            cyc.merge(inner)
            cyc.swap(pi, pj, x, y)
            return case
    # generic: any cycle edge a-b and layer edge c-d with a~c and b~d
    for a in sorted(cyc.nb):
        for b in sorted(cyc.nb[a]):
            for s in range(k):
                for c, d in ((layer[s], layer[(s + 1) % k]), (layer[(s + 1) % k], layer[s])):
                    if g.has_edge(a, c) and g.has_edge(b, d):
                        cyc.merge(inner)
                        cyc.swap(a, b, c, d)
                        return "fallback"
    raise AssertionError("no splice found between consecutive convex layers")


def _insert_path(g: Graph, cyc: _Cycle, prev: Sequence[int], path: Sequence[int]) -> str:
    candidates = [(min(e), max(e)) for e in _prev_layer_edges(cyc, prev)]
    others = sorted({(min(a, b), max(a, b)) for a in cyc.nb for b in cyc.nb[a]} - set(candidates))
    for a, b in candidates + others:
        for seq in (list(path), list(path)[::-1]):
            if g.has_edge(a, seq[0]) and g.has_edge(b, seq[-1]):
                cyc.insert_path(a, b, seq)
                return "path" if (a, b) in candidates else "fallback"
    raise AssertionError("innermost collinear layer cannot be attached")


# ---------------------------------------------------------------------------
# Blocker counting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockerBound:
    size: int
    bound: int
    blockers: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.size >= self.bound

    def to_json(self) -> dict[str, Any]:
        return {"size": self.size, "bound": self.bound, "passed": self.passed, "blockers": list(self.blockers)}


def blocker_bound_check(emb: Embedding, A: Iterable[int], C: Iterable[int]) -> BlockerBound:
    """Blockers on all segments between two mutually invisible sets, against |A|+|C|-1.

    Blockers may themselves belong to A or C.
    """
    a_set, c_set = sorted(set(A)), sorted(set(C))
    if not a_set or not c_set:
        raise InvalidInput("A and C must be nonempty")
    if set(a_set) & set(c_set):
        raise InvalidInput("A and C must be disjoint")
    for v in a_set + c_set:
        if not 0 <= v < emb.n:
            raise InvalidInput(f"vertex {v} out of range")
    blockers: set[int] = set()
    for a in a_set:
        for c in c_set:
            if emb.graph.has_edge(a, c):
                raise InvalidInput(f"{a} and {c} see each other")
            blockers.update(emb.blockers.between(a, c))
    return BlockerBound(len(blockers), len(a_set) + len(c_set) - 1, tuple(sorted(blockers)))


def sample_invisible_sets(g: Graph, rng: random.Random) -> tuple[list[int], list[int]] | None:
    """Random nonempty disjoint A, C with no edge between them, or None if
    the graph is complete."""
    pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    if not pairs:
        return None
    a, c = rng.choice(pairs)
    A, C = [a], [c]
    rest = [v for v in range(g.n) if v not in (a, c)]
    rng.shuffle(rest)
    for v in rest:
        side = rng.random() < 0.5
        target, opposite = (A, C) if side else (C, A)
        if all(not g.has_edge(v, w) for w in opposite):
            target.append(v)
    return sorted(A), sorted(C)


# ---------------------------------------------------------------------------
# Audit suite
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AuditReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict[str, Any]:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


CLIQUE_AUDIT_LIMIT = 24


def audit_embedding(emb: Embedding, blocker_samples: int = 20, seed: int = 0) -> AuditReport:
    """Run every structural check against ``emb.graph`` and its points.

    Each failing check carries a witness that can be re-checked on its own.
    Checks that only apply to non-path graphs pass vacuously on paths.
    """
    g = emb.graph
    pts = emb.points
    n = g.n
    checks: list[Check] = []

    actual = build_pvg(pts)
    diff = None
    if actual.graph != g:
        for u in range(n):
            for v in range(u + 1, n):
                if actual.graph.has_edge(u, v) != g.has_edge(u, v):
                    diff = [u, v]
                    break
            if diff:
                break
    checks.append(Check("round_trip", diff is None, None if diff is None else {"pair": diff}))
    blocker_ok = actual.blockers == emb.blockers
    checks.append(Check("blocker_map", blocker_ok, None if blocker_ok else {"reason": "blocker map differs"}))

    if not is_connected(g):
        checks.append(Check("connected", False, {"reason": "graph is disconnected"}))
        return AuditReport(checks)

    path = is_path_graph(g)
    gsps = maximal_gsps(pts)
    k_max = max((len(r) for r in gsps), default=2)

    witness = None
    if not path:
        for run in gsps:
            members = set(run)
            if not any(v not in members and all(g.has_edge(v, u) for u in run) for v in range(n)):
                witness = {"gsp": list(run)}
                break
    checks.append(Check("gsp_common_neighbour", witness is None, witness))

    witness = None
    for run in gsps:
        if g.m < edge_lower_bound(len(run), n):
            witness = {"gsp": list(run), "edges": g.m, "bound": edge_lower_bound(len(run), n)}
            break
    checks.append(Check("gsp_edge_bound", witness is None, witness))

    witness = None
    for run in gsps:
        members = set(run)
        for v in range(n):
            if v not in members and g.degree(v) < len(run):
                witness = {"gsp": list(run), "vertex": v, "degree": g.degree(v)}
                break
        if witness:
            break
    checks.append(Check("off_gsp_degree", witness is None, witness))

    if n >= 2:
        floor = n - 1 if k_max <= 2 else min_degree_bound(n, k_max)
        low = min(range(n), key=g.degree)
        ok = g.degree(low) >= floor
        checks.append(Check("min_degree_bound", ok, None if ok else {"vertex": low, "degree": g.degree(low), "bound": floor}))

    invisible = g.m < n * (n - 1) // 2
    ok = path or not invisible or diameter_at_most(g, 2)
    checks.append(Check("diameter_two", ok, None if ok else {"reason": "some pair at distance > 2"}))

    witness = None
    if not path:
        for root in range(n):
            levels, _ = bfs_levels(g, root)
            if len(levels) > 3:
                witness = {"root": root, "levels": len(levels)}
                break
    checks.append(Check("bfs_levels", witness is None, witness))

    witness = None
    if not path:
        for v in range(n):
            if not neighborhood_connected(g, v):
                witness = {"vertex": v}
                break
    checks.append(Check("neighbourhood_connected", witness is None, witness))

    if n <= CLIQUE_AUDIT_LIMIT and n >= 2:
        omega = brute_max_clique(g)
        delta = min(g.degrees())
        ok = omega <= 2 * delta
        checks.append(Check("clique_bound", ok, None if ok else {"clique": omega, "min_degree": delta}))

    ok = path or not is_bipartite(g)
    checks.append(Check("bipartite_implies_path", ok, None if ok else {"reason": "bipartite but not a path"}))
    ok = path or not is_triangle_free(g)
    checks.append(Check("triangle_free_implies_path", ok, None if ok else {"reason": "triangle-free but not a path"}))

    if not path and diff is None:
        try:
            hc = hamiltonian_cycle_steps(emb)
            checks.append(Check("hamiltonian_cycle", True))
        except AssertionError as exc:
            checks.append(Check("hamiltonian_cycle", False, {"reason": str(exc)}))

    rng = random.Random(seed)
    witness = None
    done = 0
    for _ in range(blocker_samples):
        sample = sample_invisible_sets(g, rng)
        if sample is None or diff is not None:
            break
        A, C = sample
        res = blocker_bound_check(emb, A, C)
        done += 1
        if not res.passed:
            witness = {"A": A, "C": C, **res.to_json()}
            break
    checks.append(Check("blocker_bound", witness is None, witness if witness else {"samples": done}))
    return AuditReport(checks)
