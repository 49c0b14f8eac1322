"""Recognition and reconstruction of planar point visibility graphs.

Every planar PVG is either one of six parametric families, each a chordless
spine path plus at most two extra vertices ("apexes"), or one of a few small
sporadic graphs kept in the shipped catalog.

Template vertex numbering, used throughout: spine vertices ``0..k-1`` in path
order, then the full apex ``k``, then the second apex ``k+1``. In family E the
second apex misses spine vertex 0; in family F it misses an interior spine
vertex (``missed``, default 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .errors import InvalidInput
from .geometry import PointSet
from .graph import Graph, find_isomorphism, is_connected
from .visibility import Embedding, build_pvg

FAMILIES = ("A", "B", "C", "D", "E", "F")
# apex count per family
APEXES = {"A": 0, "B": 1, "C": 2, "D": 2, "E": 2, "F": 2}
# smallest n for which the family template is defined
MIN_N = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 4, "F": 5}

# below this size recognition goes through isomorphism with a finite list
SMALL_N = 8


# ---------------------------------------------------------------------------
# Templates and coordinate schemes
# ---------------------------------------------------------------------------


def _check_params(family: str, n: int, missed: int | None) -> int:
    if family not in APEXES:
        raise InvalidInput(f"unknown family {family!r}")
    if n < MIN_N[family]:
        raise InvalidInput(f"family {family} needs n >= {MIN_N[family]}")
    k = n - APEXES[family]
    if family == "F":
        missed = 1 if missed is None else missed
        if not 0 < missed < k - 1:
            raise InvalidInput("family F misses an interior spine vertex")
        return missed
    if missed is not None and not (family == "E" and missed == 0):
        raise InvalidInput(f"family {family} takes no missed vertex")
    return 0


def family_template(family: str, n: int, missed: int | None = None) -> Graph:
    """The family's graph on ``n`` vertices in template numbering."""
    j = _check_params(family, n, missed)
    k = n - APEXES[family]
    edges = [(i, i + 1) for i in range(k - 1)]
    if family == "A":
        return Graph(n, edges)
    a, b = k, k + 1
    edges += [(i, a) for i in range(k)]
    if family == "B":
        return Graph(n, edges)
    if family == "C":
        edges += [(i, b) for i in range(k)] + [(a, b)]
    elif family == "D":
        edges += [(i, b) for i in range(k)]
    else:
        skip = 0 if family == "E" else j
        edges += [(i, b) for i in range(k) if i != skip] + [(a, b)]
    return Graph(n, edges)


def family_points(family: str, n: int, missed: int | None = None) -> PointSet:
    """Integer coordinates realising :func:`family_template`, all of magnitude <= n.

    Spine on the x-axis at (i, 0). Apexes: B (0,1); C (0,1), (1,1); D (1,1)
    and (1,-1), blocked by (1,0); E (0,1), (0,2), the latter blocked from
    (0,0); F (j,1), (j,2), the latter blocked from (j,0).
    """
    j = _check_params(family, n, missed)
    k = n - APEXES[family]
    pts = [(i, 0) for i in range(k)]
    extra = {
        "A": [],
        "B": [(0, 1)],
        "C": [(0, 1), (1, 1)],
        "D": [(1, 1), (1, -1)],
        "E": [(0, 1), (0, 2)],
        "F": [(j, 1), (j, 2)],
    }[family]
    return PointSet(pts + extra)


def iter_family_instances(n: int) -> Iterator[tuple[str, int | None, Graph]]:
    """Every (family, missed, template) defined at size ``n``."""
    for fam in FAMILIES:
        if n < MIN_N[fam]:
            continue
        if fam == "F":
            k = n - 2
            # reflection maps missed j to k-1-j
            for j in range(1, (k - 1) // 2 + 1):
                yield fam, j, family_template(fam, n, j)
        else:
            yield fam, None, family_template(fam, n)


# ---------------------------------------------------------------------------
# Classification result
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarClass:
    """Outcome of :func:`classify`.

    ``family`` is one of ``A``..``F``, ``"particular"`` or ``"none"``.
    ``mapping[t]`` is the input vertex playing template vertex ``t`` (for a
    particular graph, catalog vertex ``t``).
    """

    family: str
    n: int
    mapping: tuple[int, ...] = ()
    missed: int | None = None
    particular: int | None = None
    reason: str = ""

    @property
    def is_planar_pvg(self) -> bool:
        return self.family != "none"

    @property
    def spine(self) -> tuple[int, ...]:
        if self.family not in APEXES:
            return ()
        return self.mapping[: self.n - APEXES[self.family]]

    @property
    def apexes(self) -> tuple[int, ...]:
        if self.family not in APEXES:
            return ()
        return self.mapping[self.n - APEXES[self.family]:]

    def template(self) -> Graph:
        if self.family in APEXES:
            return family_template(self.family, self.n, self.missed)
        if self.family == "particular":
            from .catalog import load_catalog

            return load_catalog().entry(self.particular).graph
        raise InvalidInput("negative verdict has no template")

    def describe(self) -> str:
        if self.family == "none":
            return f"NotPlanarPVG: {self.reason}"
        if self.family == "particular":
            return f"Particular({self.particular}) n={self.n} mapping={list(self.mapping)}"
        parts = [f"Family{self.family}({self.n})", f"spine={list(self.spine)}"]
        if self.apexes:
            parts.append(f"apexes={list(self.apexes)}")
        if self.family == "E":
            parts.append(f"missed={self.spine[0]}")
        elif self.family == "F":
            parts.append(f"missed={self.spine[self.missed]}")
        return " ".join(parts)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family, "n": self.n}
        if self.family == "none":
            out["reason"] = self.reason
            return out
        out["mapping"] = list(self.mapping)
        if self.family == "particular":
            out["particular"] = self.particular
        else:
            out["spine"] = list(self.spine)
            out["apexes"] = list(self.apexes)
            if self.family == "E":
                out["missed_vertex"] = self.spine[0]
            elif self.family == "F":
                out["missed"] = self.missed
                out["missed_vertex"] = self.spine[self.missed]
        return out


def _negative(n: int, reason: str) -> PlanarClass:
    return PlanarClass("none", n, reason=reason)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


def classify(g: Graph) -> PlanarClass:
    """Decide whether ``g`` is a planar PVG and, if so, which one.

    Up to eight vertices this is isomorphism against every family instance
    and the catalog. Beyond that the apexes are exactly the vertices of
    degree at least n-3 (spine vertices have degree at most four), so one
    linear pass over the adjacency lists settles it.
    """
    n = g.n
    if n == 0:
        return _negative(0, "empty graph")
    if not is_connected(g):
        return _negative(n, "disconnected")
    if n >= 3 and g.m > 3 * n - 6:
        return _negative(n, f"{g.m} edges exceed the planar bound 3n-6 = {3 * n - 6}")
    if n <= SMALL_N:
        return _classify_small(g)
    return _classify_large(g)


def _classify_small(g: Graph) -> PlanarClass:
    n = g.n
    for fam, missed, tmpl in iter_family_instances(n):
        f = find_isomorphism(tmpl, g)
        if f is not None:
            return PlanarClass(fam, n, tuple(f), missed=missed)
    from .catalog import load_catalog

    for entry in load_catalog().entries:
        if entry.graph.n != n:
            continue
        f = find_isomorphism(entry.graph, g)
        if f is not None:
            return PlanarClass("particular", n, tuple(f), particular=entry.id)
    return _negative(n, "not isomorphic to any planar PVG on at most eight vertices")


def _classify_large(g: Graph) -> PlanarClass:
    n = g.n
    adj = g.adj
    apexes = [v for v in range(n) if len(adj[v]) >= n - 3]
    if len(apexes) > 2:
        return _negative(n, f"{len(apexes)} vertices of degree >= n-3")
    is_apex = [False] * n
    for a in apexes:
        is_apex[a] = True
    k = n - len(apexes)
    inner = [0] * n
    inner_edges = 0
    for v in range(n):
        if is_apex[v]:
            continue
        c = 0
        for u in adj[v]:
            if not is_apex[u]:
                c += 1
        inner[v] = c
        inner_edges += c
    inner_edges //= 2
    if inner_edges != k - 1:
        return _negative(n, "non-apex vertices do not induce a path")
    ends = [v for v in range(n) if not is_apex[v] and inner[v] == 1]
    if len(ends) != 2 or any(not is_apex[v] and inner[v] not in (1, 2) for v in range(n)):
        return _negative(n, "non-apex vertices do not induce a path")
    spine = [ends[0]]
    prev = -1
    cur = ends[0]
    while True:
        nxt = -1
        for u in adj[cur]:
            if not is_apex[u] and u != prev:
                nxt = u
                break
        if nxt < 0:
            break
        spine.append(nxt)
        prev, cur = cur, nxt
    if len(spine) != k:
        return _negative(n, "non-apex vertices do not induce a path")

    if not apexes:
        return PlanarClass("A", n, tuple(spine))
    if len(apexes) == 1:
        (a,) = apexes
        if len(adj[a]) != k:
            return _negative(n, "single apex misses a spine vertex")
        return PlanarClass("B", n, tuple(spine + [a]))

    a, b = apexes
    ab = b in adj[a]
    da = len(adj[a]) - ab
    db = len(adj[b]) - ab
    if da == k and db == k:
        return PlanarClass("C" if ab else "D", n, tuple(spine + [a, b]))
    if da < db:
        a, b, da, db = b, a, db, da
    if not (ab and da == k and db == k - 1):
        return _negative(n, "apex adjacency matches no family")
    pos = {v: i for i, v in enumerate(spine)}
    on_b = [False] * k
    for u in adj[b]:
        if u != a:
            on_b[pos[u]] = True
    j = on_b.index(False)
    if j in (0, k - 1):
        if j == k - 1:
            spine.reverse()
        return PlanarClass("E", n, tuple(spine + [a, b]))
    if j > k - 1 - j:
        spine.reverse()
        j = k - 1 - j
    return PlanarClass("F", n, tuple(spine + [a, b]), missed=j)


# ---------------------------------------------------------------------------
# Reconstruction
# ---------------------------------------------------------------------------


def reconstruct(c: PlanarClass) -> Embedding:
    """Integer embedding of the classified graph, in the input's vertex ids."""
    if c.family == "none":
        raise InvalidInput("cannot reconstruct a negative verdict")
    if c.family == "particular":
        from .catalog import load_catalog

        template_pts = list(load_catalog().entry(c.particular).points)
    else:
        template_pts = list(family_points(c.family, c.n, c.missed))
    pts: list = [None] * c.n
    for t, v in enumerate(c.mapping):
        pts[v] = template_pts[t]
    return build_pvg(PointSet(pts))


def recognize_and_reconstruct(g: Graph) -> Embedding | None:
    c = classify(g)
    if not c.is_planar_pvg:
        return None
    emb = reconstruct(c)
    if emb.graph != g:
        raise AssertionError(f"reconstruction of {c.describe()} does not round-trip")
    return emb
