"""Three necessary conditions for a graph to be a point visibility graph.

NC1 is a structural check (BFS depth and connected neighbourhoods). NC2 asks
for an assignment of blocker chains to invisible pairs, found here by
backtracking over chordless paths. NC3 asks, for some such assignment, for
an ordering of each vertex's neighbours in which consecutive "rays" are
fully visible to each other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping

from .budget import Budget
from .errors import BudgetExceeded, InvalidInput
from .graph import (
    Graph,
    Pair,
    bfs_levels,
    chordless_paths,
    induces_path,
    invisible_pairs,
    is_connected,
    is_csp,
    is_path_graph,
    neighborhood_connected,
)
from .visibility import BlockerMap, Embedding, ray_order

Chain = tuple[int, ...]

MAX_RAYS = 24


class Verdict(str, enum.Enum):
    SATISFIED = "satisfied"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"
    SKIPPED = "skipped"


class BlockerAssignment(BlockerMap):
    """Interior chain assigned to each invisible pair, oriented from the smaller id."""

    @classmethod
    def from_items(cls, items: Iterable[tuple[Pair, Iterable[int]]]) -> BlockerAssignment:
        return cls({pair: tuple(chain) for pair, chain in items})

    @classmethod
    def from_embedding(cls, emb: Embedding) -> BlockerAssignment:
        """The geometric blockers of an embedding read as vertex chains."""
        return cls(dict(emb.blockers.items()))

    def to_json(self) -> list[dict[str, list[int]]]:
        return [{"pair": list(p), "chain": list(c)} for p, c in self.items()]


@dataclass
class ConditionResult:
    verdict: Verdict
    witness: Any = None
    detail: dict[str, Any] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.verdict is Verdict.SATISFIED

    @property
    def refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.verdict.value}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness.to_json() if hasattr(self.witness, "to_json") else self.witness
        if self.stats:
            out["stats"] = self.stats
        return out


def default_max_interior(n: int) -> int:
    return max(1, n - 2) if n <= 12 else 4


# ---------------------------------------------------------------------------
# NC1
# ---------------------------------------------------------------------------


def check_nc1(g: Graph) -> ConditionResult:
    if not is_connected(g):
        raise InvalidInput("graph is disconnected")
    if is_path_graph(g):
        return ConditionResult(Verdict.SATISFIED, detail={"vacuous": "graph is a path"})
    for root in range(g.n):
        levels, _ = bfs_levels(g, root)
        if len(levels) > 3:
            return ConditionResult(
                Verdict.REFUTED,
                detail={"reason": "bfs-depth", "root": root, "levels": len(levels)},
            )
    for v in range(g.n):
        if not neighborhood_connected(g, v):
            return ConditionResult(
                Verdict.REFUTED,
                detail={"reason": "disconnected-neighbourhood", "vertex": v, "neighbours": list(g.adj[v])},
            )
    return ConditionResult(Verdict.SATISFIED)


# ---------------------------------------------------------------------------
# NC2
# ---------------------------------------------------------------------------


class _PathCache:
    def __init__(self, g: Graph) -> None:
        self.g = g
        self.memo: dict[frozenset[int], bool] = {}

    def __call__(self, vertices: frozenset[int]) -> bool:
        hit = self.memo.get(vertices)
        if hit is None:
            hit = self.memo[vertices] = induces_path(self.g, vertices)
        return hit


def _conflict(
    is_path: Callable[[frozenset[int]], bool], s: int, a: int, ca: Chain, b: int, cb: Chain
) -> int:
    """Item (2 or 3) violated by chains ``ca`` of (s, a) and ``cb`` of (s, b), else 0."""
    if set(ca) & set(cb):
        if not is_path(frozenset(ca) | frozenset(cb) | {s, a, b}):
            return 2
    if b in ca and a in cb:
        return 3
    return 0


def verify_assignment(g: Graph, assignment: Mapping[Pair, Chain]) -> ConditionResult:
    """Check items 1-3 of NC2 for a complete assignment; report the first violation."""
    a = assignment if isinstance(assignment, BlockerMap) else BlockerAssignment(assignment)
    required = set(invisible_pairs(g))
    given = set(a.keys())
    if given != required:
        missing = sorted(required - given)
        extra = sorted(given - required)
        raise InvalidInput(f"assignment does not cover the invisible pairs (missing {missing}, extra {extra})")
    for (u, w), chain in a.items():
        if not chain or not _valid_chain(g, u, w, chain):
            return ConditionResult(
                Verdict.REFUTED, detail={"item": 1, "pair": [u, w], "chain": list(chain)}
            )
    is_path = _PathCache(g)
    incident: dict[int, list[int]] = {}
    for u, w in a:
        incident.setdefault(u, []).append(w)
        incident.setdefault(w, []).append(u)
    for s in sorted(incident):
        others = sorted(incident[s])
        for x in range(len(others)):
            for y in range(x + 1, len(others)):
                p, q = others[x], others[y]
                item = _conflict(is_path, s, p, a.between(s, p), q, a.between(s, q))
                if item:
                    return ConditionResult(
                        Verdict.REFUTED,
                        detail={
                            "item": item,
                            "pairs": [[s, p], [s, q]],
                            "chains": [list(a.between(s, p)), list(a.between(s, q))],
                        },
                    )
    return ConditionResult(Verdict.SATISFIED, witness=BlockerAssignment(dict(a.items())))


def _valid_chain(g: Graph, u: int, w: int, chain: Chain) -> bool:
    seq = (u, *chain, w)
    if len(set(seq)) != len(seq) or any(not 0 <= v < g.n for v in seq):
        return False
    return is_csp(g, seq)


VertexCheck = Callable[[int, dict[int, Chain]], bool]


def iter_valid_assignments(
    g: Graph,
    max_interior: int | None = None,
    budget: Budget | None = None,
    vertex_check: VertexCheck | None = None,
) -> Iterator[BlockerAssignment]:
    """Every assignment satisfying NC2 items 1-3, in deterministic order.

    Pairs are branched in increasing order of candidate count. If given,
    ``vertex_check(v, chains)`` is called as soon as every invisible pair at
    ``v`` is assigned (``chains`` maps the other endpoint to the chain oriented
    away from ``v``); returning False prunes the branch.
    """
    budget = budget or Budget.unlimited()
    if max_interior is None:
        max_interior = default_max_interior(g.n)
    pairs = invisible_pairs(g)
    cands = {p: chordless_paths(g, p[0], p[1], max_interior) for p in pairs}
    order = sorted(pairs, key=lambda p: (len(cands[p]), p))
    if any(not cands[p] for p in order):
        return
    options = [[c[1:-1] for c in cands[p]] for p in order]
    need = {v: g.n - 1 - g.degree(v) for v in range(g.n)}
    is_path = _PathCache(g)
    at: dict[int, dict[int, Chain]] = {v: {} for v in range(g.n)}
    chosen: list[Chain] = []

    def place(depth: int, chain: Chain) -> bool:
        u, w = order[depth]
        for s, other, cs in ((u, w, chain), (w, u, chain[::-1])):
            for b, cb in at[s].items():
                if _conflict(is_path, s, other, cs, b, cb):
                    return False
        at[u][w] = chain
        at[w][u] = chain[::-1]
        if vertex_check is not None:
            for v in (u, w):
                if len(at[v]) == need[v] and not vertex_check(v, at[v]):
                    del at[u][w], at[w][u]
                    return False
        chosen.append(chain)
        return True

    def unplace(depth: int) -> None:
        u, w = order[depth]
        del at[u][w], at[w][u]
        chosen.pop()

    total = len(order)
    if total == 0:
        if vertex_check is None or all(vertex_check(v, {}) for v in range(g.n)):
            yield BlockerAssignment({})
        return
    cursor = [-1] * total
    depth = 0
    while depth >= 0:
        placed = False
        opts = options[depth]
        while cursor[depth] + 1 < len(opts):
            cursor[depth] += 1
            budget.tick()
            if place(depth, opts[cursor[depth]]):
                placed = True
                break
        if placed:
            if depth + 1 == total:
                yield BlockerAssignment(dict(zip(order, chosen)))
                unplace(depth)
            else:
                depth += 1
                cursor[depth] = -1
        else:
            cursor[depth] = -1
            depth -= 1
            if depth >= 0:
                unplace(depth)


def search_nc2(
    g: Graph, max_interior: int | None = None, budget: Budget | None = None
) -> ConditionResult:
    budget = budget or Budget()
    if max_interior is None:
        max_interior = default_max_interior(g.n)
    empty = [p for p in invisible_pairs(g) if not chordless_paths(g, p[0], p[1], max_interior)]
    if empty:
        return ConditionResult(
            Verdict.REFUTED,
            detail={"reason": "no-candidate-chain", "pair": list(empty[0]), "max_interior": max_interior},
            stats=budget.stats(),
        )
    try:
        for assignment in iter_valid_assignments(g, max_interior, budget):
            return ConditionResult(Verdict.SATISFIED, witness=assignment, stats=budget.stats())
    except BudgetExceeded as exc:
        return ConditionResult(Verdict.INCONCLUSIVE, detail={"reason": str(exc)}, stats=budget.stats())
    detail: dict[str, Any] = {"reason": "exhausted", "max_interior": max_interior}
    forced = _forced_violation(g, max_interior)
    if forced:
        detail["violation"] = forced
    return ConditionResult(Verdict.REFUTED, detail=detail, stats=budget.stats())


def _forced_violation(g: Graph, max_interior: int) -> dict[str, Any] | None:
    """If two pairs each have a single candidate and those clash, describe it."""
    single = {}
    for p in invisible_pairs(g):
        c = chordless_paths(g, p[0], p[1], max_interior)
        if len(c) == 1:
            single[p] = c[0][1:-1]
    a = BlockerAssignment(single)
    is_path = _PathCache(g)
    keys = sorted(single)
    for x in range(len(keys)):
        for y in range(x + 1, len(keys)):
            p, q = keys[x], keys[y]
            shared = set(p) & set(q)
            if len(shared) != 1:
                continue
            (s,) = shared
            pa = p[0] if p[1] == s else p[1]
            qb = q[0] if q[1] == s else q[1]
            item = _conflict(is_path, s, pa, a.between(s, pa), qb, a.between(s, qb))
            if item:
                return {
                    "item": item,
                    "pairs": [[s, pa], [s, qb]],
                    "chains": [list(a.between(s, pa)), list(a.between(s, qb))],
                }
    return None


# ---------------------------------------------------------------------------
# NC3
# ---------------------------------------------------------------------------


def hamiltonian_path(masks: list[int], budget: Budget | None = None) -> list[int] | None:
    """A Hamiltonian path of the graph given by neighbour bitmasks, or None.

    Cheap sufficient/necessary tests first, then subset dynamic programming.
    """
    d = len(masks)
    if d <= 1:
        return list(range(d))
    full = (1 << d) - 1
    degs = [bin(m).count("1") for m in masks]
    if min(degs) == 0 or sum(1 for x in degs if x == 1) > 2:
        return None
    if all(m | (1 << v) == full for v, m in enumerate(masks)):
        return list(range(d))
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = masks[v] & ~seen
        seen |= fresh
        while fresh:
            low = fresh & -fresh
            stack.append(low.bit_length() - 1)
            fresh ^= low
    if seen != full:
        return None
    reach = [0] * (1 << d)
    for v in range(d):
        reach[1 << v] = 1 << v
    for mask in range(1, full + 1):
        ends = reach[mask]
        if not ends:
            continue
        if budget is not None and (mask & 0xFFF) == 0:
            budget.tick(0x1000)
        grow = 0
        e = ends
        while e:
            low = e & -e
            grow |= masks[low.bit_length() - 1]
            e ^= low
        grow &= ~mask
        while grow:
            low = grow & -grow
            reach[mask | low] |= low
            grow ^= low
    if not reach[full]:
        return None
    path = []
    mask = full
    allowed = full
    while mask:
        cand = reach[mask] & allowed
        low = cand & -cand
        v = low.bit_length() - 1
        path.append(v)
        mask ^= low
        allowed = masks[v]
    path.reverse()
    return path


def ray_sets(g: Graph, v: int, chains: Mapping[int, Chain]) -> dict[int, frozenset[int]]:
    """For each neighbour j of v: {j} plus every u whose chain from v contains j."""
    sets = {j: {j} for j in g.adj[v]}
    for u, chain in chains.items():
        for b in chain:
            if b in sets:
                sets[b].add(u)
    return {j: frozenset(s) for j, s in sets.items()}


def vertex_ray_order(
    g: Graph, v: int, chains: Mapping[int, Chain], budget: Budget | None = None
) -> list[int] | None:
    """An order of v's neighbours in which consecutive closed ray sets are
    completely joined, or None if none exists."""
    nbs = list(g.adj[v])
    d = len(nbs)
    if d > MAX_RAYS:
        raise BudgetExceeded(f"vertex {v} has {d} neighbours; ray search limited to {MAX_RAYS}")
    sets = ray_sets(g, v, chains)
    gm = g.masks
    joined = []
    for j in nbs:
        acc = ~0
        for x in sets[j]:
            acc &= gm[x]
        joined.append(acc)
    compat = [0] * d
    for a in range(d):
        for b in range(a + 1, d):
            if all(joined[a] >> y & 1 for y in sets[nbs[b]]):
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    path = hamiltonian_path(compat, budget)
    return None if path is None else [nbs[i] for i in path]


def _chains_at(g: Graph, a: BlockerMap, v: int) -> dict[int, Chain]:
    return {u: a.between(v, u) for u in range(g.n) if u != v and not g.has_edge(u, v)}


def check_nc3_for_assignment(
    g: Graph, assignment: Mapping[Pair, Chain], budget: Budget | None = None
) -> ConditionResult:
    a = assignment if isinstance(assignment, BlockerMap) else BlockerAssignment(assignment)
    if is_path_graph(g):
        return ConditionResult(Verdict.SATISFIED, detail={"vacuous": "graph is a path"})
    orders: dict[int, list[int]] = {}
    try:
        for v in range(g.n):
            order = vertex_ray_order(g, v, _chains_at(g, a, v), budget)
            if order is None:
                sets = ray_sets(g, v, _chains_at(g, a, v))
                return ConditionResult(
                    Verdict.REFUTED,
                    detail={"vertex": v, "ray_sets": {str(j): sorted(s) for j, s in sorted(sets.items())}},
                )
            orders[v] = order
    except BudgetExceeded as exc:
        return ConditionResult(Verdict.INCONCLUSIVE, detail={"reason": str(exc)})
    return ConditionResult(Verdict.SATISFIED, witness={str(v): o for v, o in orders.items()})


def search_nc3(
    g: Graph, max_interior: int | None = None, budget: Budget | None = None
) -> ConditionResult:
    """Look for a valid assignment admitting ray orders at every vertex.

    The per-vertex test runs as soon as all invisible pairs at that vertex are
    assigned, which prunes the enumeration without changing its outcome.
    """
    budget = budget or Budget()
    if max_interior is None:
        max_interior = default_max_interior(g.n)
    nc1 = check_nc1(g)
    if not nc1.satisfied:
        return ConditionResult(Verdict.REFUTED, detail={"reason": "no valid assignment: NC1 fails"})
    path_like = is_path_graph(g)
    memo: dict[tuple[int, tuple], bool] = {}

    def vertex_ok(v: int, chains: dict[int, Chain]) -> bool:
        if path_like:
            return True
        key = (v, tuple(sorted(chains.items())))
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = vertex_ray_order(g, v, chains, budget) is not None
        return hit

    try:
        for assignment in iter_valid_assignments(g, max_interior, budget, vertex_ok):
            if path_like:
                return ConditionResult(
                    Verdict.SATISFIED,
                    witness={"assignment": assignment.to_json()},
                    detail={"vacuous": "graph is a path"},
                    stats=budget.stats(),
                )
            check = check_nc3_for_assignment(g, assignment, budget)
            return ConditionResult(
                Verdict.SATISFIED,
                witness={"assignment": assignment.to_json(), "orders": check.witness},
                stats=budget.stats(),
            )
    except BudgetExceeded as exc:
        return ConditionResult(Verdict.INCONCLUSIVE, detail={"reason": str(exc)}, stats=budget.stats())
    return ConditionResult(
        Verdict.REFUTED, detail={"reason": "exhausted", "max_interior": max_interior}, stats=budget.stats()
    )


# ---------------------------------------------------------------------------
# Combined report
# ---------------------------------------------------------------------------


@dataclass
class NcReport:
    nc1: ConditionResult
    nc2: ConditionResult
    nc3: ConditionResult

    @property
    def overall(self) -> Verdict:
        verdicts = [self.nc1.verdict, self.nc2.verdict, self.nc3.verdict]
        if Verdict.REFUTED in verdicts:
            return Verdict.REFUTED
        if Verdict.INCONCLUSIVE in verdicts:
            return Verdict.INCONCLUSIVE
        return Verdict.SATISFIED

    def to_json(self) -> dict[str, Any]:
        return {
            "overall": self.overall.value,
            "nc1": self.nc1.to_json(),
            "nc2": self.nc2.to_json(),
            "nc3": self.nc3.to_json(),
        }


def run_checks(g: Graph, max_interior: int | None = None, budget: Budget | None = None) -> NcReport:
    """NC1, NC2, then NC3.

    NC2 is searched even when NC1 already fails, so the report carries a
    blocker-level witness as well; NC3 is only searched when both hold.
    """
    budget = budget or Budget()
    nc1 = check_nc1(g)
    nc2 = search_nc2(g, max_interior, budget)
    if nc1.refuted:
        return NcReport(nc1, nc2, ConditionResult(Verdict.REFUTED, detail={"reason": "NC1 refuted"}))
    if nc2.refuted:
        return NcReport(nc1, nc2, ConditionResult(Verdict.REFUTED, detail={"reason": "NC2 refuted"}))
    if nc2.verdict is Verdict.INCONCLUSIVE:
        return NcReport(nc1, nc2, ConditionResult(Verdict.INCONCLUSIVE, detail={"reason": "NC2 inconclusive"}))
    nc3 = search_nc3(g, max_interior, budget)
    return NcReport(nc1, nc2, nc3)


def geometric_ray_orders(emb: Embedding) -> dict[int, list[int]]:
    """Angular neighbour orders of a real embedding (the NC3 witness it induces)."""
    return {v: ray_order(emb, v) for v in range(emb.n)}


def orders_respect_assignment(
    g: Graph, assignment: Mapping[Pair, Chain], orders: Mapping[int, list[int]]
) -> bool:
    """True iff each given order has completely joined consecutive ray sets."""
    a = assignment if isinstance(assignment, BlockerMap) else BlockerAssignment(assignment)
    for v, order in orders.items():
        if sorted(order) != list(g.adj[v]):
            return False
        sets = ray_sets(g, v, _chains_at(g, a, v))
        for j, k in zip(order, order[1:]):
            for x in sets[j]:
                for y in sets[k]:
                    if x == y or not g.has_edge(x, y):
                        return False
    return True
