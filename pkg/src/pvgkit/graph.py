"""Simple undirected graphs, chordless-path machinery and small exact solvers."""

from __future__ import annotations

import itertools
from collections import deque
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, InvalidInput

Pair = tuple[int, int]


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Adjacency is kept as sorted neighbor tuples. The pair index used for O(1)
    edge queries and the per-vertex bitmasks used by the exhaustive solvers
    are built on first use, so very large sparse graphs only pay for the
    lists.
    """

    __slots__ = ("n", "adj", "m", "_pairs", "_masks", "_key")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        lists: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={n}")
            lists[u].append(v)
            lists[v].append(u)
        adj = []
        m2 = 0
        for u, nb in enumerate(lists):
            nb.sort()
            for a, b in zip(nb, nb[1:]):
                if a == b:
                    raise InvalidInput(f"duplicate edge ({u}, {a})")
            adj.append(tuple(nb))
            m2 += len(nb)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(adj)
        self.m = m2 // 2
        self._pairs: frozenset[int] | None = None
        self._masks: tuple[int, ...] | None = None
        self._key: tuple | None = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> Graph:
        n = len(adj)
        edges = [(u, v) for u, nb in enumerate(adj) for v in nb if u < v]
        g = cls(n, edges)
        for u, nb in enumerate(adj):
            if tuple(sorted(set(nb))) != g.adj[u]:
                raise InvalidInput(f"adjacency of vertex {u} is not symmetric")
        return g

    @classmethod
    def _trusted(cls, adj: Sequence[tuple[int, ...]]) -> Graph:
        # caller guarantees sorted, symmetric, loop-free neighbour tuples
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(adj)
        g.m = sum(len(nb) for nb in adj) // 2
        g._pairs = None
        g._masks = None
        g._key = None
        return g

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    # -- queries ---------------------------------------------------------

    @property
    def pairs(self) -> frozenset[int]:
        if self._pairs is None:
            n = self.n
            self._pairs = frozenset(u * n + v for u, nb in enumerate(self.adj) for v in nb if u < v)
        return self._pairs

    @property
    def masks(self) -> tuple[int, ...]:
        if self._masks is None:
            self._masks = tuple(sum(1 << v for v in nb) for nb in self.adj)
        return self._masks

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return u * self.n + v in self.pairs

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adj]

    def edges(self) -> list[Pair]:
        return [(u, v) for u, nb in enumerate(self.adj) for v in nb if u < v]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled ``0..k-1`` in the given order; returns the labels."""
        order = list(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u] if v in index and index[u] < index[v]]
        return Graph(len(order), edges), order

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        masks = self.masks
        edges = []
        for u in range(self.n):
            rest = full & ~masks[u] & ~((1 << (u + 1)) - 1)
            while rest:
                low = rest & -rest
                edges.append((u, low.bit_length() - 1))
                rest ^= low
        return Graph(self.n, edges)

    def relabel(self, mapping: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``mapping[v]``."""
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges()))

    def toggle(self, u: int, v: int) -> Graph:
        es = set(self.edges())
        e = (min(u, v), max(u, v))
        es.symmetric_difference_update({e})
        return Graph(self.n, sorted(es))

    def _identity(self) -> tuple:
        if self._key is None:
            self._key = (self.n, self.adj)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def __repr__(self) -> str:
        if self.m <= 12:
            return f"Graph(n={self.n}, edges={self.edges()})"
        return f"Graph(n={self.n}, m={self.m})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidInput(f"vertex {v} out of range for n={g.n}")


# ---------------------------------------------------------------------------
# Pairs, paths and CSPs
# ---------------------------------------------------------------------------


def invisible_pairs(g: Graph) -> list[Pair]:
    """All non-adjacent vertex pairs ``(u, v)`` with ``u < v``, sorted."""
    out = []
    for u in range(g.n):
        nb = set(g.adj[u])
        out.extend((u, v) for v in range(u + 1, g.n) if v not in nb)
    return out


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == g.n


def path_order(g: Graph) -> list[int] | None:
    """Vertex order along ``g`` if ``g`` is a chordless Hamiltonian path, else None.

    Linear time: degree sequence (two 1s, rest 2s), edge count n-1 and one walk.
    """
    n = g.n
    if n == 0:
        return []
    if n == 1:
        return [0]
    if g.m != n - 1:
        return None
    ends = []
    for v, nb in enumerate(g.adj):
        d = len(nb)
        if d == 1:
            ends.append(v)
        elif d != 2:
            return None
    if len(ends) != 2:
        return None
    start = ends[0]
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in g.adj[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order if len(order) == n else None


def is_path_graph(g: Graph) -> bool:
    return path_order(g) is not None


def is_csp(g: Graph, seq: Sequence[int]) -> bool:
    """Consecutive vertices adjacent, non-consecutive vertices non-adjacent."""
    seq = list(seq)
    for v in seq:
        _check_vertex(g, v)
    if len(set(seq)) != len(seq):
        raise InvalidInput("sequence repeats a vertex")
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if g.has_edge(u, seq[j]) != (j == i + 1):
                return False
    return True


def induces_path(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff some ordering of ``vertices`` is a CSP of ``g``."""
    sub, _ = g.induced(sorted(set(vertices)))
    return is_path_graph(sub)


def chordless_paths(g: Graph, u: int, w: int, max_interior: int) -> list[tuple[int, ...]]:
    """All chordless paths ``(u, b_1, .., b_t, w)`` with ``1 <= t <= max_interior``.

    Sorted lexicographically. ``u`` and ``w`` must be non-adjacent.
    """
    _check_vertex(g, u)
    _check_vertex(g, w)
    if u == w or g.has_edge(u, w):
        raise InvalidInput(f"({u}, {w}) is not an invisible pair")
    masks = g.masks
    out: list[tuple[int, ...]] = []
    target_bit = 1 << w

    # forbidden: vertices adjacent to some path vertex other than the last one
    def extend(path: list[int], forbidden: int, used: int) -> None:
        last = path[-1]
        interior = len(path) - 1
        if interior and masks[last] & target_bit:
            # any detour would leave the chord (last, w) behind
            if not forbidden & target_bit:
                out.append(tuple(path) + (w,))
            return
        for x in g.adj[last]:
            if x == w:
                if interior >= 1 and not forbidden & target_bit:
                    out.append(tuple(path) + (w,))
                continue
            bit = 1 << x
            if used & bit or forbidden & bit or interior >= max_interior:
                continue
            path.append(x)
            extend(path, forbidden | masks[last], used | bit)
            path.pop()

    extend([u], 0, (1 << u) | target_bit)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def bfs_levels(g: Graph, root: int) -> tuple[list[list[int]], list[int]]:
    """BFS level sets from ``root`` and the sorted list of unreached vertices."""
    _check_vertex(g, root)
    dist = [-1] * g.n
    dist[root] = 0
    levels = [[root]]
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        if nxt:
            nxt.sort()
            levels.append(nxt)
        frontier = nxt
    unreached = [v for v in range(g.n) if dist[v] < 0]
    return levels, unreached


def eccentricity(g: Graph, root: int) -> int:
    levels, unreached = bfs_levels(g, root)
    if unreached:
        raise InvalidInput("graph is disconnected")
    return len(levels) - 1


def diameter_at_most(g: Graph, d: int) -> bool:
    if not is_connected(g):
        raise InvalidInput("graph is disconnected")
    return all(eccentricity(g, v) <= d for v in range(g.n))


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if color[v] < 0:
                    color[v] = color[u] ^ 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def is_triangle_free(g: Graph) -> bool:
    masks = g.masks
    for u, v in g.edges():
        if masks[u] & masks[v]:
            return False
    return True


def neighborhood_connected(g: Graph, v: int) -> bool:
    nb = g.adj[v]
    if len(nb) <= 1:
        return True
    sub, _ = g.induced(nb)
    return is_connected(sub)


# ---------------------------------------------------------------------------
# Exact optima
# ---------------------------------------------------------------------------

BRUTE_LIMIT = 64


def _max_clique_masks(masks: Sequence[int], n: int) -> int:
    """Bron-Kerbosch with Tomita pivoting over bitmasks; returns clique size."""
    best = 0

    def expand(size: int, cand: int, excl: int) -> None:
        nonlocal best
        if not cand and not excl:
            if size > best:
                best = size
            return
        if size + bin(cand).count("1") <= best:
            return
        union = cand | excl
        pivot_nb = 0
        top = -1
        while union:
            low = union & -union
            u = low.bit_length() - 1
            c = bin(cand & masks[u]).count("1")
            if c > top:
                top, pivot_nb = c, masks[u]
            union ^= low
        rest = cand & ~pivot_nb
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            expand(size + 1, cand & masks[v], excl & masks[v])
            cand &= ~low
            excl |= low
            rest ^= low

    expand(0, (1 << n) - 1, 0)
    return best


def brute_max_clique(g: Graph, limit: int = BRUTE_LIMIT) -> int:
    if g.n > limit:
        raise BudgetExceeded(f"exhaustive clique search limited to {limit} vertices")
    if g.n == 0:
        return 0
    return _max_clique_masks(g.masks, g.n)


def brute_optima(g: Graph, limit: int = BRUTE_LIMIT) -> tuple[int, int, int]:
    """(minimum vertex cover, maximum independent set, maximum clique) sizes."""
    clique = brute_max_clique(g, limit)
    indep = brute_max_clique(g.complement(), limit)
    return g.n - indep, indep, clique


def edge_lower_bound(k: int, n: int) -> int:
    """Least edge count of a visibility graph on ``n`` points containing ``k`` collinear ones."""
    if k < 2 or n < k:
        raise InvalidInput("need 2 <= k <= n")
    return (k - 1) + k * (n - k)


def planar_vertex_bound(k: int) -> int:
    """Most vertices of a planar visibility graph with ``k >= 4`` collinear points."""
    if k < 4:
        raise InvalidInput("bound holds for k >= 4")
    return k + (2 * k - 5) // (k - 3)


def min_degree_bound(n: int, k: int) -> int:
    """Least vertex degree when the longest collinear run has ``k`` points."""
    if k < 2 or n < k:
        raise InvalidInput("need 2 <= k <= n")
    return -(-(n - 1) // (k - 1))


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

ISO_LIMIT = 12


def refine_colors(g: Graph, initial: Sequence[int] | None = None) -> list[int]:
    """Stable colour refinement; colours are canonical (independent of labelling)."""
    colors = list(initial) if initial is not None else [len(nb) for nb in g.adj]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in g.adj[v]))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def _iso_search(g1: Graph, g2: Graph) -> list[int] | None:
    n = g1.n
    if n != g2.n or g1.m != g2.m:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    # refine both graphs in one palette so colours are comparable
    joint = Graph(2 * n, g1.edges() + [(u + n, v + n) for u, v in g2.edges()])
    colors = refine_colors(joint)
    c1, c2 = colors[:n], colors[n:]
    if sorted(c1) != sorted(c2):
        return None
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)
    order = sorted(range(n), key=lambda v: (len(by_color[c1[v]]), c1[v], v))
    m1, m2 = g1.masks, g2.masks
    image = [-1] * n
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (m1[v] >> u & 1) != (m2[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if place(i + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    return image if place(0) else None


def graph_isomorphic(g1: Graph, g2: Graph, limit: int = ISO_LIMIT) -> bool:
    return find_isomorphism(g1, g2, limit) is not None


def find_isomorphism(g1: Graph, g2: Graph, limit: int = ISO_LIMIT) -> list[int] | None:
    """A bijection ``f`` with ``(u, v)`` an edge of g1 iff ``(f[u], f[v])`` an edge of g2."""
    if max(g1.n, g2.n) > limit:
        raise BudgetExceeded(f"isomorphism test limited to {limit} vertices")
    return _iso_search(g1, g2)


def canonical_form(g: Graph, limit: int = ISO_LIMIT) -> str:
    """Labelling-invariant string: the least upper-triangle bit string over
    all orderings compatible with refined colour classes."""
    if g.n > limit:
        raise BudgetExceeded(f"canonical form limited to {limit} vertices")
    n = g.n
    colors = refine_colors(g)
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    keys = sorted(classes)
    masks = g.masks
    best = -1
    for perms in itertools.product(*(itertools.permutations(classes[c]) for c in keys)):
        order = [v for block in perms for v in block]
        bits = 0
        for i in range(n):
            mi = masks[order[i]]
            for j in range(i + 1, n):
                bits = bits << 1 | (mi >> order[j] & 1)
        # equal-length bit strings compare like their integer values
        if best < 0 or bits < best:
            best = bits
    return f"{n}:{max(best, 0):x}"


def pair_count(n: int) -> int:
    return comb(n, 2)


def iter_pairs(n: int) -> Iterator[Pair]:
    return itertools.combinations(range(n), 2)
