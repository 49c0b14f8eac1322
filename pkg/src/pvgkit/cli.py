"""Command-line front end.

Exit codes: 0 positive verdict or success, 1 negative verdict, 2
inconclusive (budget exhausted), 3 bad input. With ``--json`` the report on
stdout is canonical JSON; wall-clock timings never appear there (they go to
stderr) so repeated runs print identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .audit import audit_embedding, hamiltonian_cycle
from .budget import DEFAULT_NODE_LIMIT, DEFAULT_TIME_LIMIT, Budget
from .catalog import build_catalog, write_catalog
from .errors import InvalidInput
from .graph import is_path_graph
from .gridsearch import SearchStatus, grid_search_embedding
from .io import dump_json, format_graph, format_points, read_graph, read_points, write_graph, write_points
from .necessary import Verdict, run_checks
from .planar import classify, reconstruct
from .reductions import build_gadget, emit_etr
from .visibility import BlockerMap, Embedding, build_pvg

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class _Fail(Exception):
    """Argument problem found after parsing; reported with exit code 3."""


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _grid(text: str) -> tuple[int, int]:
    try:
        w, h = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like WxH, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return w, h


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _budget(args: argparse.Namespace, unlimited: bool = False) -> Budget:
    if unlimited:
        return Budget(args.time_limit, args.node_limit)
    return Budget(
        DEFAULT_TIME_LIMIT if args.time_limit is None else args.time_limit,
        DEFAULT_NODE_LIMIT if args.node_limit is None else args.node_limit,
    )


def _strip_elapsed(obj: Any, sink: list[float]) -> Any:
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if k == "elapsed":
                sink.append(v)
            else:
                out[k] = _strip_elapsed(v, sink)
        return out
    if isinstance(obj, list):
        return [_strip_elapsed(v, sink) for v in obj]
    return obj


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    times: list[float] = []
    payload = _strip_elapsed(payload, times)
    if times:
        print(f"elapsed: {sum(times):.3f}s", file=sys.stderr)
    sys.stdout.write(dump_json(payload) if args.json else text)


def _require(args: argparse.Namespace, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise _Fail(f"--{name} is required for '{args.command}'")
    if not Path(value).is_file():
        raise _Fail(f"--{name}: no such file: {value}")
    return value


def _embedding_json(emb: Embedding) -> dict[str, Any]:
    return {
        "n": emb.n,
        "m": emb.graph.m,
        "points": [list(p) for p in emb.points],
        "edges": [list(e) for e in emb.graph.edges()],
        "blockers": [{"pair": list(p), "chain": list(c)} for p, c in emb.blockers.items()],
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    emb = build_pvg(read_points(_require(args, "points")))
    if args.out:
        write_graph(args.out, emb.graph)
    _emit(args, _embedding_json(emb), format_graph(emb.graph))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    g = read_graph(_require(args, "graph"))
    report = run_checks(g, budget=_budget(args))
    lines = [f"overall: {report.overall.value}"]
    for name in ("nc1", "nc2", "nc3"):
        res = getattr(report, name)
        line = f"{name}: {res.verdict.value}"
        if res.detail:
            line += f" {dump_json(res.detail).strip()}".replace("\n", "").replace("  ", "")
        lines.append(line)
    _emit(args, report.to_json(), "\n".join(lines) + "\n")
    return {Verdict.SATISFIED: EXIT_OK, Verdict.REFUTED: EXIT_NEGATIVE}.get(report.overall, EXIT_INCONCLUSIVE)


def cmd_planar(args: argparse.Namespace) -> int:
    g = read_graph(_require(args, "graph"))
    c = classify(g)
    payload = c.to_json()
    text = c.describe() + "\n"
    if c.is_planar_pvg:
        emb = reconstruct(c)
        payload["points"] = [list(p) for p in emb.points]
        if args.out:
            write_points(args.out, emb.points)
        if args.reconstruct:
            text += format_points(emb.points)
    _emit(args, payload, text)
    return EXIT_OK if c.is_planar_pvg else EXIT_NEGATIVE


def cmd_hamcycle(args: argparse.Namespace) -> int:
    emb = build_pvg(read_points(_require(args, "points")))
    if is_path_graph(emb.graph):
        _emit(args, {"cycle": None, "reason": "visibility graph is a path"}, "no Hamiltonian cycle: the visibility graph is a path\n")
        return EXIT_NEGATIVE
    cycle = hamiltonian_cycle(emb)
    _emit(args, {"cycle": cycle}, " ".join(map(str, cycle)) + "\n")
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    pts = read_points(_require(args, "points"))
    emb = build_pvg(pts)
    if args.graph:
        # audit a claimed embedding: the given graph against these points
        g = read_graph(_require(args, "graph"))
        if g.n != len(pts):
            raise _Fail(f"graph has {g.n} vertices but {len(pts)} points were given")
        emb = Embedding(pts, g, BlockerMap({}))
    report = audit_embedding(emb, seed=args.seed)
    lines = [f"{'pass' if c.passed else 'FAIL'} {c.name}" for c in report.checks]
    _emit(args, report.to_json(), "\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_search(args: argparse.Namespace) -> int:
    g = read_graph(_require(args, "graph"))
    if args.grid is None:
        raise _Fail("--grid is required for 'search'")
    res = grid_search_embedding(g, *args.grid, budget=_budget(args))
    text = f"{res.status.value} on {args.grid[0]}x{args.grid[1]} ({res.stats['nodes']} nodes)\n"
    if res.embedding is not None:
        text += format_points(res.embedding.points)
        if args.out:
            write_points(args.out, res.embedding.points)
    _emit(args, res.to_json(), text)
    return {SearchStatus.FOUND: EXIT_OK, SearchStatus.EXHAUSTED: EXIT_NEGATIVE}.get(res.status, EXIT_INCONCLUSIVE)


def cmd_gadget(args: argparse.Namespace) -> int:
    g = read_graph(_require(args, "graph"))
    gd = build_gadget(g)
    if args.out:
        gd.write(args.out)
    payload = gd.manifest()
    payload["points"] = [list(p) for p in gd.points]
    text = f"x={gd.x} n={gd.graph.n} m={gd.graph.m}\n" + format_points(gd.points)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_etr(args: argparse.Namespace) -> int:
    g = read_graph(_require(args, "graph"))
    f = emit_etr(g, paper_compat=args.paper_compat)
    smt = f.to_smt2()
    if args.out:
        Path(args.out).write_text(smt, encoding="utf-8")
    payload = {
        "n": f.n,
        "variables": len(f.variables),
        "t_variables": len(f.t_variables),
        "assertions": len(f.assertions),
        "atoms": f.atoms,
        "paper_compat": f.paper_compat,
    }
    text = smt if not args.out else f"t-variables: {len(f.t_variables)}, assertions: {len(f.assertions)}\n"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    w, h = args.grid or (7, 7)
    sizes = tuple(args.sizes)
    cat = build_catalog(w, h, sizes, budget=_budget(args, unlimited=True), workers=args.workers)
    if args.out:
        write_catalog(cat, args.out, {"generator": f"build_catalog({w}, {h})"})
    payload = cat.to_json()
    lines = [f"grid {w}x{h} complete={cat.complete}"]
    for e in cat.entries:
        tag = f" (family {e.family})" if e.family else ""
        lines.append(f"#{e.id} n={e.n} m={e.graph.m} {e.canonical}{tag}")
    _emit(args, payload, "\n".join(lines) + "\n")
    if not cat.complete:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--points", metavar="FILE", help="point file, one 'x y' per line")
    common.add_argument("--graph", metavar="FILE", help="graph file, 'n m' header then edges")
    common.add_argument("--out", metavar="PATH", help="output file or directory")
    common.add_argument("--grid", type=_grid, metavar="WxH", help="grid size for search/catalog")
    common.add_argument("--time-limit", type=_positive_float, metavar="SECS")
    common.add_argument("--node-limit", type=_positive_int, metavar="N")
    common.add_argument("--workers", type=_positive_int, default=1, metavar="K")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--paper-compat", action="store_true", help="emit the literal t < -1 edge branch")

    parser = argparse.ArgumentParser(prog="pvgkit", description="Point visibility graph toolkit.")
    parser.add_argument("--version", action="version", version=f"pvgkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    table: list[tuple[str, Callable[[argparse.Namespace], int], str]] = [
        ("build", cmd_build, "points -> visibility graph and blockers"),
        ("check", cmd_check, "graph -> necessary-condition report"),
        ("planar", cmd_planar, "graph -> planar PVG class and reconstruction"),
        ("hamcycle", cmd_hamcycle, "points -> Hamiltonian cycle"),
        ("audit", cmd_audit, "points -> structural audit report"),
        ("search", cmd_search, "graph + grid -> embedding search"),
        ("gadget", cmd_gadget, "graph -> blocker gadget with embedding"),
        ("etr", cmd_etr, "graph -> SMT-LIB realisability formula"),
        ("catalog", cmd_catalog, "grid -> particular planar PVG catalog"),
    ]
    for name, func, help_text in table:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        if name == "planar":
            p.add_argument("--reconstruct", action="store_true", help="print the reconstructed points")
        if name == "catalog":
            p.add_argument("--sizes", type=int, nargs="+", default=[6, 7], help="vertex counts to enumerate")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; map to the input-error code
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (_Fail, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
