"""Sporadic planar PVGs: generation by grid enumeration, persistence, loading.

A planar PVG is *particular* when it has a visibility embedding in which at
least three points lie off the longest collinear run. Graphs with an
embedding leaving at most two points off a run of five or more make up the
infinite families; on six vertices two particular graphs also happen to be
isomorphic to small family templates, and entries record such coincidences.

The shipped catalog under ``pvgkit/data/catalog`` is the output of
:func:`build_catalog` and is regenerated by the test-suite to confirm it.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .budget import Budget
from .errors import BudgetExceeded, FormatError, InvalidInput
from .geometry import PointSet
from .graph import Graph, canonical_form, graph_isomorphic
from .gridsearch import iter_planar_point_sets
from .io import dump_json, format_graph, format_points, parse_graph, parse_points
from .visibility import build_pvg, maximal_gsps

DEFAULT_SIZES = (6, 7)
EXPECTED_COUNTS = {6: 3, 7: 2, 8: 0}


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    graph: Graph
    points: PointSet
    canonical: str
    # family template the graph is isomorphic to, e.g. "C" or "F1", if any
    family: str | None = None

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass
class Catalog:
    entries: list[CatalogEntry]
    width: int
    height: int
    sizes: tuple[int, ...]
    complete: bool = True
    stats: dict[str, Any] = field(default_factory=dict)

    def entry(self, ident: int) -> CatalogEntry:
        for e in self.entries:
            if e.id == ident:
                return e
        raise KeyError(ident)

    def counts(self) -> dict[int, int]:
        out = {n: 0 for n in self.sizes}
        for e in self.entries:
            out[e.n] = out.get(e.n, 0) + 1
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "grid": [self.width, self.height],
            "sizes": list(self.sizes),
            "complete": self.complete,
            "counts": {str(n): c for n, c in sorted(self.counts().items())},
            "entries": [
                {
                    "id": e.id,
                    "n": e.n,
                    "m": e.graph.m,
                    "canonical": e.canonical,
                    "family": e.family,
                    "longest_run": longest_run(e.points),
                    "points": [list(p) for p in e.points],
                    "edges": [list(p) for p in e.graph.edges()],
                }
                for e in self.entries
            ],
        }


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


def longest_run(points) -> int:
    """Size of the largest collinear subset (2 when in general position)."""
    return max((len(r) for r in maximal_gsps(points)), default=min(2, len(points)))


def family_match(g: Graph) -> str | None:
    from .planar import iter_family_instances

    for fam, missed, tmpl in iter_family_instances(g.n):
        if graph_isomorphic(tmpl, g):
            return fam if missed is None else f"{fam}{missed}"
    return None


def _scan(args: tuple[int, int, int, int, float | None, int | None]) -> tuple[dict, int, bool]:
    """Classes found below one first cell.

    Maps canonical form to (longest run, point set), keeping the point set
    with the shortest longest run and, among those, the first found.
    """
    n, width, height, first, time_limit, node_limit = args
    budget = Budget(time_limit, node_limit)
    found: dict[str, tuple[int, tuple]] = {}
    forms: dict[tuple, str] = {}
    complete = True
    try:
        for cells, edges in iter_planar_point_sets(n, width, height, [first], budget):
            key = tuple(edges)
            cf = forms.get(key)
            if cf is None:
                cf = forms[key] = canonical_form(Graph(n, edges))
            r = longest_run(PointSet(cells))
            hit = found.get(cf)
            if hit is None or r < hit[0]:
                found[cf] = (r, cells)
    except BudgetExceeded:
        complete = False
    return found, budget.nodes, complete


def build_catalog(
    width: int,
    height: int,
    sizes: Sequence[int] = DEFAULT_SIZES,
    budget: Budget | None = None,
    workers: int = 1,
) -> Catalog:
    """Enumerate the particular planar PVGs of the given sizes realisable on the grid.

    Every planar visibility graph of an ``n``-subset of the grid is
    collected; a class is kept when one of its embeddings on the grid has
    ``n - 3`` or fewer points on its longest line. The stored embedding
    minimises that run, first in row-major order on ties. Work is split by
    the cell of the first point and merged in that order, so the result
    does not depend on ``workers``. On budget exhaustion the partial
    catalog is returned with ``complete`` False.
    """
    if width < 1 or height < 1:
        raise InvalidInput("grid dimensions must be positive")
    if any(n < 1 or n > 8 for n in sizes):
        raise InvalidInput("catalog sizes must lie in 1..8")
    budget = budget or Budget(time_limit=None, node_limit=None)
    tasks = [(n, width, height, first, budget.time_limit, budget.node_limit) for n in sizes for first in range(width)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_scan(t))
            if not results[-1][2]:
                break
    merged: dict[int, dict[str, tuple[int, tuple]]] = {n: {} for n in sizes}
    nodes = 0
    complete = True
    for (n, *_), (found, count, done) in zip(tasks, results):
        nodes += count
        complete = complete and done
        for cf, hit in found.items():
            best = merged[n].get(cf)
            if best is None or hit[0] < best[0]:
                merged[n][cf] = hit
    complete = complete and len(results) == len(tasks)
    kept = []
    for n in sorted(merged):
        for cf, (r, cells) in merged[n].items():
            if n - r >= 3:
                g = build_pvg(PointSet(cells)).graph
                kept.append((n, family_match(g) is not None, cf, g, cells))
    # sporadic graphs first, then those coinciding with a family template
    kept.sort(key=lambda t: t[:3])
    entries = [
        CatalogEntry(i + 1, g, PointSet(cells), cf, family_match(g))
        for i, (n, _, cf, g, cells) in enumerate(kept)
    ]
    return Catalog(entries, width, height, tuple(sizes), complete, {"nodes": nodes})


def minimal_catalog_grid(
    sizes: Sequence[int] = DEFAULT_SIZES,
    expected: dict[int, int] | None = None,
    start: int = 3,
    stop: int = 7,
    workers: int = 1,
) -> tuple[Catalog, list[dict[str, Any]]]:
    """Grow a square grid from ``start`` until the expected class counts
    appear (or ``stop`` is passed); returns the last catalog and a log."""
    expected = expected or {n: EXPECTED_COUNTS[n] for n in sizes}
    log = []
    cat = None
    for s in range(start, stop + 1):
        cat = build_catalog(s, s, sizes, workers=workers)
        counts = cat.counts()
        log.append({"grid": s, "counts": {str(n): c for n, c in sorted(counts.items())}})
        if all(counts.get(n, 0) == c for n, c in expected.items()):
            break
    assert cat is not None
    return cat, log


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------


def write_catalog(cat: Catalog, directory: str | Path, provenance: dict[str, Any] | None = None) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    records = []
    for e in cat.entries:
        stem = f"particular_{e.id}"
        (d / f"{stem}.graph").write_text(format_graph(e.graph), encoding="utf-8")
        (d / f"{stem}.pts").write_text(format_points(e.points), encoding="utf-8")
        records.append(
            {"id": e.id, "n": e.n, "m": e.graph.m, "canonical": e.canonical, "family": e.family,
             "graph": f"{stem}.graph", "points": f"{stem}.pts"}
        )
    manifest = {
        "grid": [cat.width, cat.height],
        "sizes": list(cat.sizes),
        "complete": cat.complete,
        "entries": records,
    }
    if provenance:
        manifest["provenance"] = provenance
    (d / "manifest.json").write_text(dump_json(manifest), encoding="utf-8")


def _catalog_from_texts(manifest_text: str, read, source: str) -> Catalog:
    try:
        manifest = json.loads(manifest_text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad manifest: {exc.msg}", exc.lineno, source) from None
    entries = []
    for rec in manifest["entries"]:
        g = parse_graph(read(rec["graph"]), rec["graph"])
        pts = parse_points(read(rec["points"]), rec["points"])
        if build_pvg(pts).graph != g:
            raise FormatError("catalog embedding does not realise its graph", None, rec["points"])
        if canonical_form(g) != rec["canonical"]:
            raise FormatError("canonical form mismatch", None, rec["graph"])
        entries.append(CatalogEntry(rec["id"], g, pts, rec["canonical"], rec.get("family")))
    w, h = manifest["grid"]
    return Catalog(entries, w, h, tuple(manifest["sizes"]), manifest.get("complete", True))


def read_catalog(directory: str | Path) -> Catalog:
    d = Path(directory)
    return _catalog_from_texts(
        (d / "manifest.json").read_text(encoding="utf-8"),
        lambda name: (d / name).read_text(encoding="utf-8"),
        str(d),
    )


@lru_cache(maxsize=1)
def load_catalog() -> Catalog:
    """The catalog shipped with the package."""
    root = resources.files("pvgkit") / "data" / "catalog"
    return _catalog_from_texts(
        (root / "manifest.json").read_text(encoding="utf-8"),
        lambda name: (root / name).read_text(encoding="utf-8"),
        "pvgkit/data/catalog",
    )
