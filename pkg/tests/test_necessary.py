from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given

from pvgkit.budget import Budget
from pvgkit.errors import InvalidInput
from pvgkit.fixtures import (
    SWAPPED_THIRTEEN_ASSIGNMENT,
    chorded_p5,
    swapped_thirteen_graph,
    thirteen_graph,
    thirteen_points,
)
from pvgkit.graph import Graph, is_path_graph
from pvgkit.necessary import (
    BlockerAssignment,
    Verdict,
    check_nc1,
    check_nc3_for_assignment,
    geometric_ray_orders,
    hamiltonian_path,
    orders_respect_assignment,
    run_checks,
    search_nc2,
    search_nc3,
    verify_assignment,
)
from pvgkit.visibility import build_pvg

from conftest import random_point_set
from test_graph import graphs

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


def test_thirteen_point_fixture():
    pts = thirteen_points()
    assert pts.coords() == [(0, 0)] + [(s * i, s) for s in (1, 2, 3) for i in range(1, 5)]
    g = thirteen_graph()
    # [DERIVED] naive construction: 78 pairs, 21 blocked
    assert (g.n, g.m) == (13, 57)
    assert build_pvg(pts).round_trip_ok()
    gp = swapped_thirteen_graph()
    assert gp.m == 57
    assert gp.has_edge(9, 11) and gp.has_edge(10, 12)
    assert not gp.has_edge(9, 10) and not gp.has_edge(11, 12)


# ---------------------------------------------------------------------------
# NC1
# ---------------------------------------------------------------------------


def test_nc1_examples():
    assert check_nc1(Graph.complete(4)).satisfied
    res = check_nc1(Graph.cycle(5))
    assert res.refuted
    assert "vertex" in res.detail or "root" in res.detail
    assert check_nc1(Graph.path(6)).satisfied
    assert check_nc1(swapped_thirteen_graph()).satisfied
    with pytest.raises(InvalidInput):
        check_nc1(Graph(3, [(0, 1)]))


def test_nc1_depth_witness_on_chorded_path():
    res = check_nc1(chorded_p5())
    assert res.refuted
    assert res.detail == {"reason": "bfs-depth", "root": 0, "levels": 4}


# ---------------------------------------------------------------------------
# NC2
# ---------------------------------------------------------------------------


def test_complete_graph_needs_no_blockers():
    assert verify_assignment(Graph.complete(5), {}).satisfied


def test_printed_thirteen_assignment_verifies():
    g = swapped_thirteen_graph()
    a = BlockerAssignment.from_items(SWAPPED_THIRTEEN_ASSIGNMENT)
    assert len(a) == 21
    assert verify_assignment(g, a).satisfied


def test_coverage_mismatch_rejected():
    with pytest.raises(InvalidInput):
        verify_assignment(Graph.path(3), {})


def test_item_two_violation_on_chorded_path():
    a = {(0, 2): (1,), (0, 3): (1,), (0, 4): (1, 3), (1, 4): (3,), (2, 4): (3,)}
    res = verify_assignment(chorded_p5(), a)
    assert res.refuted
    assert res.detail["item"] == 2
    assert res.detail["pairs"] == [[0, 2], [0, 3]]


def test_item_three_violation_on_hexagon():
    # (0,2) goes round through 3 while (0,3) goes round through 2
    a = {(0, 2): (5, 4, 3), (0, 3): (1, 2), (0, 4): (5,), (1, 3): (2,), (1, 4): (2, 3),
         (1, 5): (0,), (2, 4): (3,), (2, 5): (3, 4), (3, 5): (4,)}
    res = verify_assignment(Graph.cycle(6), a)
    assert res.refuted
    assert res.detail == {"item": 3, "pairs": [[0, 2], [0, 3]], "chains": [[5, 4, 3], [1, 2]]}


def test_nc2_search_examples():
    res = search_nc2(Graph.path(5))
    assert res.satisfied
    assert dict(res.witness.items()) == {
        (0, 2): (1,), (0, 3): (1, 2), (0, 4): (1, 2, 3),
        (1, 3): (2,), (1, 4): (2, 3), (2, 4): (3,),
    }
    res = search_nc2(chorded_p5())
    assert res.refuted
    assert res.detail["violation"]["item"] == 2
    assert res.detail["violation"]["pairs"] == [[0, 2], [0, 3]]
    res = search_nc2(swapped_thirteen_graph())
    assert res.satisfied
    assert verify_assignment(swapped_thirteen_graph(), res.witness).satisfied


def test_nc2_budget_gives_inconclusive():
    res = search_nc2(swapped_thirteen_graph(), budget=Budget(node_limit=5))
    assert res.verdict is Verdict.INCONCLUSIVE


@given(graphs(min_n=3, max_n=7))
def test_nc2_witness_always_verifies(g):
    from pvgkit.graph import is_connected

    if not is_connected(g):
        return
    res = search_nc2(g, budget=Budget(node_limit=200_000))
    if res.satisfied:
        assert verify_assignment(g, res.witness).satisfied


# ---------------------------------------------------------------------------
# NC3
# ---------------------------------------------------------------------------


def _ham_path_oracle(masks):
    n = len(masks)
    for perm in itertools.permutations(range(n)):
        if all(masks[a] >> b & 1 for a, b in zip(perm, perm[1:])):
            return True
    return n == 0


@given(graphs(min_n=1, max_n=7))
def test_hamiltonian_path_matches_permutation_oracle(g):
    path = hamiltonian_path(list(g.masks))
    assert (path is not None) == _ham_path_oracle(g.masks)
    if path is not None:
        assert sorted(path) == list(range(g.n))
        assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def test_printed_assignment_fails_ray_condition_at_origin():
    res = check_nc3_for_assignment(
        swapped_thirteen_graph(), BlockerAssignment.from_items(SWAPPED_THIRTEEN_ASSIGNMENT)
    )
    assert res.refuted
    assert res.detail["vertex"] == 0
    assert res.detail["ray_sets"] == {"1": [1, 5, 9], "2": [2, 6, 10], "3": [3, 7, 11], "4": [4, 8, 12]}


def test_nc3_on_thirteen_pair():
    assert search_nc3(thirteen_graph()).satisfied
    # [DERIVED] exhaustive search, also with unrestricted chain length
    for limit in (4, 11):
        res = search_nc3(swapped_thirteen_graph(), limit, Budget.unlimited())
        assert res.refuted
        assert res.stats["nodes"] == 980


def test_run_checks_ordering():
    assert run_checks(thirteen_graph()).overall is Verdict.SATISFIED
    rep = run_checks(swapped_thirteen_graph())
    assert [rep.nc1.verdict, rep.nc2.verdict, rep.nc3.verdict] == [
        Verdict.SATISFIED, Verdict.SATISFIED, Verdict.REFUTED,
    ]
    rep = run_checks(chorded_p5())
    assert rep.nc1.refuted and rep.nc2.refuted and rep.nc3.refuted
    rep = run_checks(Graph.cycle(5))
    assert rep.overall is Verdict.REFUTED


def test_real_embeddings_pass_all_conditions():
    rng = random.Random(5)
    for _ in range(40):
        emb = build_pvg(random_point_set(rng, rng.randint(3, 12), 4))
        g = emb.graph
        a = BlockerAssignment.from_embedding(emb)
        assert verify_assignment(g, a).satisfied
        if is_path_graph(g):
            continue
        assert check_nc1(g).satisfied
        assert check_nc3_for_assignment(g, a).satisfied
        assert orders_respect_assignment(g, a, geometric_ray_orders(emb))
