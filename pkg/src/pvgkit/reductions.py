"""Blocker gadget for optimisation lower bounds, and the real-arithmetic formula.

The gadget turns any graph G into a PVG G' that contains G as an induced
subgraph and adds one universal vertex per non-edge. Vertex cover and
clique shift by the number of added vertices while independence number is
unchanged, so the three problems stay hard on PVGs.

The formula states, over real variables for the point coordinates, that a
point set realises a given graph. It is emitted as SMT-LIB text and can be
evaluated exactly at a candidate point set; no solver is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Any, Iterator

from .errors import InvalidInput
from .geometry import COORD_LIMIT, PointSet
from .graph import Graph, invisible_pairs
from .io import dump_json, format_graph, format_points
from .visibility import build_pvg

GADGET_LIMIT = 12

# ---------------------------------------------------------------------------
# Gadget
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gadget:
    base: Graph
    graph: Graph
    points: PointSet
    # base vertex v is vertex injection[v] of the output graph
    injection: tuple[int, ...]
    x: int
    denominator: int

    @property
    def blockers(self) -> tuple[int, ...]:
        return tuple(range(self.base.n, self.graph.n))

    def manifest(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "injection": list(self.injection),
            "blockers": list(self.blockers),
            "denominator": self.denominator,
            "base": {"n": self.base.n, "m": self.base.m},
            "graph": {"n": self.graph.n, "m": self.graph.m},
        }

    def write(self, directory: str | Path) -> None:
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        (d / "gadget.graph").write_text(format_graph(self.graph), encoding="utf-8")
        (d / "gadget.pts").write_text(format_points(self.points), encoding="utf-8")
        (d / "manifest.json").write_text(dump_json(self.manifest()), encoding="utf-8")


def _collinear(p, q, r) -> bool:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) == 0


def build_gadget(g: Graph, denominator: int | None = None) -> Gadget:
    """Realise ``g`` plus one universal blocker per non-edge.

    Base vertices sit on the parabola (i, i^2). Every blocker uses the same
    denominator D = 2N^2 + 1, N the final point count: a candidate at
    parameter a/D on its segment is rejected when it is collinear with two
    other placed points, and each such line cuts the segment at most once,
    so fewer than D values are ever excluded. Coordinates are scaled by D at
    the end and the result is re-checked with :func:`build_pvg`.
    """
    n = g.n
    if n == 0:
        raise InvalidInput("graph has no vertices")
    if n > GADGET_LIMIT:
        raise InvalidInput(f"gadget construction supports at most {GADGET_LIMIT} vertices")
    missing = invisible_pairs(g)
    x = len(missing)
    total = n + x
    # with no blockers to place the parabola points are used as they are
    d = denominator or (2 * total * total + 1 if x else 1)
    pts: list[tuple[int, int]] = [(i * d, i * i * d) for i in range(n)]
    for i, j in missing:
        (xi, yi), (xj, yj) = pts[i], pts[j]
        for a in range(1, d):
            c = (xi + (xj - xi) * a // d, yi + (yj - yi) * a // d)
            # exact since all base coordinates are multiples of d
            if any(_collinear(p, q, c) for (s, p), (t, q) in combinations(enumerate(pts), 2) if {s, t} != {i, j}):
                continue
            pts.append(c)
            break
        else:
            raise InvalidInput(f"no blocker position with denominator {d}; retry with a larger one")
    if max(max(abs(u), abs(v)) for u, v in pts) > COORD_LIMIT:
        raise InvalidInput("gadget coordinates exceed the supported range")
    emb = build_pvg(PointSet(pts))
    expected = Graph(total, list(g.edges()) + [(u, v) for v in range(n, total) for u in range(v)])
    if emb.graph != expected:
        raise AssertionError("gadget embedding does not realise G plus universal blockers")
    return Gadget(g, emb.graph, emb.points, tuple(range(n)), x, d)


# ---------------------------------------------------------------------------
# Formula
# ---------------------------------------------------------------------------


def _t(i: int, j: int, k: int) -> str:
    return f"t_{i}_{j}_{k}"


def _param_eqs(i: int, j: int, k: int) -> list[str]:
    t = _t(i, j, k)
    return [
        f"(= (- x_{k} x_{i}) (* {t} (- x_{j} x_{i})))",
        f"(= (- y_{k} y_{i}) (* {t} (- y_{j} y_{i})))",
    ]


def _det(i: int, j: int, k: int) -> str:
    return f"(- (* (- x_{j} x_{i}) (- y_{k} y_{i})) (* (- y_{j} y_{i}) (- x_{k} x_{i})))"


@dataclass(frozen=True)
class EtrFormula:
    n: int
    variables: tuple[str, ...]
    assertions: tuple[str, ...]
    paper_compat: bool = False

    @property
    def t_variables(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v.startswith("t_"))

    @property
    def atoms(self) -> int:
        """Comparison atoms over all assertions, the formula's size measure."""
        return sum(a.count("(= ") + a.count("(< ") + a.count("(> ") for a in self.assertions)

    def to_smt2(self) -> str:
        lines = [
            "; visibility-graph realisability",
            f"; vertices {self.n}",
            "(set-logic QF_NRA)",
        ]
        lines += [f"(declare-fun {v} () Real)" for v in self.variables]
        lines += [f"(assert {a})" for a in self.assertions]
        lines.append("(check-sat)")
        return "\n".join(lines) + "\n"


def _iter_t(n: int) -> Iterator[tuple[int, int, int]]:
    for i, j in combinations(range(n), 2):
        for k in range(n):
            if k != i and k != j:
                yield i, j, k


def emit_etr(g: Graph, paper_compat: bool = False) -> EtrFormula:
    """Formula true exactly at point sets realising ``g``.

    Non-edge {i,j}: some k lies strictly between, 0 < t < 1 on the
    parametrisation p_k = p_i + t (p_j - p_i). Edge {i,j}, per k: either
    p_k is off the line or it is on it with t outside [0, 1]. Points are
    pairwise distinct. ``paper_compat`` writes the "before p_i" branch as
    t < -1 instead of t < 0.
    """
    n = g.n
    if n < 2:
        raise InvalidInput("need at least two vertices")
    variables = [f"{c}_{i}" for i in range(n) for c in "xy"]
    variables += [_t(i, j, k) for i, j, k in _iter_t(n)]
    low = "(- 1)" if paper_compat else "0"
    out: list[str] = []
    for i, j in combinations(range(n), 2):
        out.append(f"(not (and (= x_{i} x_{j}) (= y_{i} y_{j})))")
    for i, j in combinations(range(n), 2):
        ks = [k for k in range(n) if k != i and k != j]
        if g.has_edge(i, j):
            for k in ks:
                t = _t(i, j, k)
                det = _det(i, j, k)
                eqs = " ".join(_param_eqs(i, j, k))
                out.append(f"(or (> {det} 0) (< {det} 0) (and (or (> {t} 1) (< {t} {low})) {eqs}))")
        else:
            if not ks:
                out.append("false")
                continue
            parts = []
            for k in ks:
                t = _t(i, j, k)
                eqs = " ".join(_param_eqs(i, j, k))
                parts.append(f"(and (< 0 {t}) (< {t} 1) {eqs})")
            out.append(parts[0] if len(parts) == 1 else "(or " + " ".join(parts) + ")")
    return EtrFormula(n, tuple(variables), tuple(out), paper_compat)


def _solve_t(pi, pj, pk) -> Fraction | None | bool:
    """The t with p_k = p_i + t (p_j - p_i): a Fraction, None if no t works,
    True if every t works (p_i = p_j = p_k)."""
    dx, dy = pj[0] - pi[0], pj[1] - pi[1]
    ex, ey = pk[0] - pi[0], pk[1] - pi[1]
    if dx == 0 and dy == 0:
        return True if ex == 0 and ey == 0 else None
    if dx * ey - dy * ex != 0:
        return None
    return Fraction(ex, dx) if dx != 0 else Fraction(ey, dy)


def eval_etr(g: Graph, points: PointSet, paper_compat: bool = False) -> bool:
    """Truth value of :func:`emit_etr` with the coordinates fixed to ``points``.

    Each t variable is existentially chosen, and only occurs in its own
    clause, so it is solved for exactly from the parametrisation.
    """
    pts = [tuple(p) for p in (points if isinstance(points, PointSet) else PointSet(points))]
    n = g.n
    if len(pts) != n:
        raise InvalidInput(f"expected {n} points, got {len(pts)}")
    if n < 2:
        raise InvalidInput("need at least two vertices")
    if len(set(pts)) != n:
        return False
    low = -1 if paper_compat else 0
    for i, j in combinations(range(n), 2):
        pi, pj = pts[i], pts[j]
        ks = [k for k in range(n) if k != i and k != j]
        if g.has_edge(i, j):
            for k in ks:
                pk = pts[k]
                if (pj[0] - pi[0]) * (pk[1] - pi[1]) - (pj[1] - pi[1]) * (pk[0] - pi[0]) != 0:
                    continue
                t = _solve_t(pi, pj, pk)
                if t is True:
                    continue
                if t is None or not (t > 1 or t < low):
                    return False
        else:
            hit = False
            for k in ks:
                t = _solve_t(pi, pj, pts[k])
                if t is True or (t is not None and 0 < t < 1):
                    hit = True
                    break
            if not hit:
                return False
    return True


def t_variable_count(n: int) -> int:
    return comb(n, 2) * max(n - 2, 0)
