from __future__ import annotations

import json
import subprocess
import sys

import pytest

from pvgkit.catalog import read_catalog
from pvgkit.cli import run
from pvgkit.fixtures import chorded_p5
from pvgkit.graph import Graph
from pvgkit.io import format_graph, format_points, read_graph, read_points
from pvgkit.visibility import build_pvg

from conftest import grid_points


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_planar_path(files, capsys):
    g = files("p10.graph", format_graph(Graph.path(10)))
    code, out, _ = _run(capsys, "planar", "--graph", g)
    assert code == 0
    assert out.startswith("FamilyA(10)")


def test_planar_negative_and_reconstruction(files, capsys, tmp_path):
    code, out, _ = _run(capsys, "planar", "--graph", files("c6.graph", format_graph(Graph.cycle(6))))
    assert code == 1 and out.startswith("NotPlanarPVG")
    g = Graph(6, [(0, 1), (1, 2), (2, 3)] + [(i, 4) for i in range(4)] + [(i, 5) for i in range(4)] + [(4, 5)])
    dest = tmp_path / "rec.pts"
    code, out, _ = _run(capsys, "planar", "--graph", files("c.graph", format_graph(g)), "--out", str(dest), "--reconstruct")
    assert code == 0
    assert build_pvg(read_points(dest)).graph == g


def test_check_chorded_path(files, capsys):
    code, out, _ = _run(capsys, "check", "--json", "--graph", files("p5c.graph", format_graph(chorded_p5())))
    assert code == 1
    report = json.loads(out)
    assert report["nc2"]["verdict"] == "refuted"
    assert report["nc2"]["detail"]["violation"]["item"] == 2
    assert "elapsed" not in out


def test_check_inconclusive(files, capsys):
    from pvgkit.fixtures import swapped_thirteen_graph

    code, _, _ = _run(capsys, "check", "--node-limit", "3", "--graph", files("g.graph", format_graph(swapped_thirteen_graph())))
    assert code == 2


def test_etr_triangle(files, capsys, tmp_path):
    dest = tmp_path / "k3.smt2"
    code, out, _ = _run(capsys, "etr", "--graph", files("k3.graph", format_graph(Graph.complete(3))), "--out", str(dest))
    assert code == 0
    assert "t-variables: 3" in out
    assert dest.read_text().count("(declare-fun t_") == 3


def test_input_errors(files, capsys):
    code, _, err = _run(capsys, "build", "--points", files("bad.pts", "0 0\n1 x\n"))
    assert code == 3 and "bad.pts:2:" in err
    code, _, err = _run(capsys, "build", "--points", "/nonexistent/file.pts")
    assert code == 3
    code, _, _ = _run(capsys, "search", "--graph", files("k3.graph", "3 0\n"), "--grid", "3by3")
    assert code == 3
    code, _, _ = _run(capsys, "nonsense")
    assert code == 3
    code, _, err = _run(capsys, "check")
    assert code == 3 and "--graph is required" in err


def test_build_output_reparses(files, capsys, tmp_path):
    pts = files("g.pts", format_points(grid_points(3, 3)))
    dest = tmp_path / "g.graph"
    code, out, _ = _run(capsys, "build", "--points", pts, "--out", str(dest))
    assert code == 0
    assert read_graph(dest) == build_pvg(grid_points(3, 3)).graph
    code, out, _ = _run(capsys, "build", "--json", "--points", pts)
    payload = json.loads(out)
    assert payload["m"] == 28 and len(payload["blockers"]) == 8


def test_hamcycle(files, capsys):
    code, out, _ = _run(capsys, "hamcycle", "--points", files("g.pts", format_points(grid_points(3, 3))))
    assert code == 0
    assert sorted(map(int, out.split())) == list(range(9))
    code, _, _ = _run(capsys, "hamcycle", "--points", files("l.pts", "0 0\n1 0\n2 0\n"))
    assert code == 1


def test_audit_claimed_graph(files, capsys):
    pts = files("g.pts", format_points(grid_points(3, 3)))
    code, out, _ = _run(capsys, "audit", "--points", pts)
    assert code == 0 and "FAIL" not in out
    bad = build_pvg(grid_points(3, 3)).graph.toggle(0, 1)
    code, out, _ = _run(capsys, "audit", "--points", pts, "--graph", files("bad.graph", format_graph(bad)))
    assert code == 1 and "FAIL round_trip" in out


def test_search_exit_codes(files, capsys, tmp_path):
    dest = tmp_path / "found.pts"
    p3 = files("p3.graph", format_graph(Graph.path(3)))
    code, _, _ = _run(capsys, "search", "--graph", p3, "--grid", "3x1", "--out", str(dest))
    assert code == 0 and build_pvg(read_points(dest)).graph == Graph.path(3)
    c5 = files("c5.graph", format_graph(Graph.cycle(5)))
    assert _run(capsys, "search", "--graph", c5, "--grid", "4x4")[0] == 1
    assert _run(capsys, "search", "--graph", c5, "--grid", "8x8", "--node-limit", "50")[0] == 2


def test_gadget_files(files, capsys, tmp_path):
    code, out, _ = _run(capsys, "gadget", "--graph", files("p3.graph", format_graph(Graph.path(3))), "--out", str(tmp_path / "gd"))
    assert code == 0 and out.startswith("x=1 n=4 m=5")
    g = read_graph(tmp_path / "gd" / "gadget.graph")
    assert build_pvg(read_points(tmp_path / "gd" / "gadget.pts")).graph == g
    assert json.loads((tmp_path / "gd" / "manifest.json").read_text())["x"] == 1


def test_catalog_subcommand(capsys, tmp_path):
    code, out, _ = _run(capsys, "catalog", "--grid", "5x5", "--sizes", "6", "--out", str(tmp_path / "cat"))
    assert code == 0
    assert out.splitlines()[0] == "grid 5x5 complete=True"
    assert read_catalog(tmp_path / "cat").counts() == {6: 3}
    assert _run(capsys, "catalog", "--grid", "6x6", "--sizes", "7", "--node-limit", "100")[0] == 2


def test_json_output_is_byte_identical(files, capsys):
    g = files("p5c.graph", format_graph(chorded_p5()))
    first = _run(capsys, "check", "--json", "--graph", g)[1]
    second = _run(capsys, "check", "--json", "--graph", g)[1]
    assert first == second
    a = _run(capsys, "catalog", "--json", "--grid", "4x4", "--sizes", "6", "--workers", "1")[1]
    b = _run(capsys, "catalog", "--json", "--grid", "4x4", "--sizes", "6", "--workers", "2")[1]
    assert a == b


def test_module_entry_point(files):
    g = files("p4.graph", format_graph(Graph.path(4)))
    proc = subprocess.run([sys.executable, "-m", "pvgkit.cli", "planar", "--graph", g], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("FamilyA(4)")
