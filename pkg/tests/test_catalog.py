from __future__ import annotations

import json
import shutil
from importlib import resources

import pytest

from pvgkit.catalog import (
    EXPECTED_COUNTS,
    build_catalog,
    family_match,
    load_catalog,
    longest_run,
    minimal_catalog_grid,
    read_catalog,
    write_catalog,
)
from pvgkit.errors import FormatError, InvalidInput
from pvgkit.graph import canonical_form
from pvgkit.planar import family_template
from pvgkit.visibility import build_pvg

# [DERIVED] enumeration of every planar visibility graph on the 7x7 grid
SHIPPED = {
    1: ("6:3fde", None, [(0, 0), (2, 0), (1, 1), (2, 2), (2, 3), (3, 5)]),
    2: ("6:1eff", "C", [(0, 0), (1, 0), (2, 0), (1, 1), (0, 2), (2, 2)]),
    3: ("6:4d7f", "F1", [(0, 0), (1, 0), (2, 0), (2, 2), (2, 3), (4, 6)]),
    4: ("7:3af7f", None, [(0, 0), (1, 0), (2, 0), (2, 2), (2, 3), (3, 3), (4, 6)]),
    5: ("7:5d5ff", None, [(0, 0), (1, 0), (2, 0), (4, 0), (2, 2), (3, 3), (2, 6)]),
}


def test_shipped_catalog_contents():
    cat = load_catalog()
    assert cat.counts() == {6: 3, 7: 2}
    assert (cat.width, cat.height) == (7, 7)
    for e in cat.entries:
        canonical, family, pts = SHIPPED[e.id]
        assert e.canonical == canonical == canonical_form(e.graph)
        assert e.family == family
        assert e.points.coords() == pts
        assert build_pvg(e.points).graph == e.graph
        assert longest_run(e.points) <= e.n - 3


def test_family_annotations():
    cat = load_catalog()
    assert family_match(cat.entry(2).graph) == "C"
    assert family_match(cat.entry(1).graph) is None
    assert family_match(family_template("F", 7, 2)) == "F2"


def test_longest_run():
    assert longest_run([(0, 0), (1, 1), (5, 2)]) == 2
    assert longest_run([(0, 0), (1, 0), (2, 0), (0, 1)]) == 3


def test_small_grid_counts():
    # [DERIVED] escalation log: 5x5 holds all three 6-vertex classes and one 7-vertex class
    cat = build_catalog(5, 5, (6, 7))
    assert cat.complete
    assert cat.counts() == {6: 3, 7: 1}
    shipped = {e.canonical for e in load_catalog().entries}
    assert {e.canonical for e in cat.entries} <= shipped


def test_worker_count_does_not_change_result():
    a = build_catalog(4, 4, (6,), workers=1)
    b = build_catalog(4, 4, (6,), workers=2)
    assert a.to_json() == b.to_json()


def test_minimal_grid_escalation_stops_early():
    cat, log = minimal_catalog_grid(sizes=(6,), start=3, stop=6)
    assert [row["grid"] for row in log] == [3, 4, 5]
    assert [row["counts"]["6"] for row in log] == [1, 2, 3]
    assert cat.counts() == {6: EXPECTED_COUNTS[6]}


def test_bad_parameters():
    with pytest.raises(InvalidInput):
        build_catalog(0, 3)
    with pytest.raises(InvalidInput):
        build_catalog(3, 3, (9,))


def test_write_read_round_trip(tmp_path):
    cat = load_catalog()
    write_catalog(cat, tmp_path / "cat", {"generator": "test"})
    back = read_catalog(tmp_path / "cat")
    assert [(e.id, e.canonical, e.family, e.points) for e in back.entries] == [
        (e.id, e.canonical, e.family, e.points) for e in cat.entries
    ]
    manifest = json.loads((tmp_path / "cat" / "manifest.json").read_text())
    assert manifest["provenance"] == {"generator": "test"}


def test_tampered_catalog_rejected(tmp_path):
    src = resources.files("pvgkit") / "data" / "catalog"
    dst = tmp_path / "cat"
    dst.mkdir()
    for name in ("manifest.json",) + tuple(f"particular_{i}.{x}" for i in range(1, 6) for x in ("graph", "pts")):
        (dst / name).write_text((src / name).read_text())
    (dst / "particular_1.pts").write_text("0 0\n1 0\n2 0\n3 0\n4 0\n5 0\n")
    with pytest.raises(FormatError):
        read_catalog(dst)
    shutil.rmtree(dst)
