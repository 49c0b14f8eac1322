"""Plain-text point and graph formats shared by the library and the CLI.

Points: one ``x y`` pair of base-10 integers per line.
Graph: a header line ``n m`` followed by ``m`` lines ``u v`` with ``u < v``.
In both, lines starting with ``#`` are comments and blank lines are skipped.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .errors import FormatError, InvalidInput
from .geometry import PointSet
from .graph import Graph


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _ints(fields: list[str], count: int, lineno: int, source: str | None, what: str) -> list[int]:
    if len(fields) != count:
        raise FormatError(f"expected {what}, got {len(fields)} fields", lineno, source)
    try:
        return [int(f, 10) for f in fields]
    except ValueError:
        raise FormatError(f"expected base-10 integers for {what}", lineno, source) from None


def parse_points(text: str, source: str | None = None) -> PointSet:
    coords = []
    for lineno, fields in _content_lines(text):
        coords.append(tuple(_ints(fields, 2, lineno, source, "'x y'")))
    try:
        return PointSet(coords)
    except InvalidInput as exc:
        raise FormatError(str(exc), None, source) from None


def format_points(points: Iterable) -> str:
    return "".join(f"{x} {y}\n" for x, y in points)


def parse_graph(text: str, source: str | None = None) -> Graph:
    rows = list(_content_lines(text))
    if not rows:
        raise FormatError("missing 'n m' header", None, source)
    lineno, fields = rows[0]
    n, m = _ints(fields, 2, lineno, source, "'n m' header")
    if n < 0 or m < 0:
        raise FormatError("n and m must be non-negative", lineno, source)
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} edges but {len(body)} follow", lineno, source)
    edges = []
    seen = set()
    for lineno, fields in body:
        u, v = _ints(fields, 2, lineno, source, "'u v'")
        if not (0 <= u < v < n):
            raise FormatError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n={n}", lineno, source)
        if (u, v) in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", lineno, source)
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}\n"]
    lines.extend(f"{u} {v}\n" for u, v in g.edges())
    return "".join(lines)


def read_points(path: str | Path) -> PointSet:
    p = Path(path)
    return parse_points(_read(p), str(p))


def read_graph(path: str | Path) -> Graph:
    p = Path(path)
    return parse_graph(_read(p), str(p))


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", None, str(path)) from None


def write_points(path: str | Path, points: Iterable) -> None:
    Path(path).write_text(format_points(points), encoding="utf-8")


def write_graph(path: str | Path, g: Graph) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def dump_json(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
