"""Acceptance run: one test per criterion, each recording a pass/fail line.

The lines are printed together at the end of the session (see conftest).
Run directly with ``python tests/test_acceptance.py`` for just this file.
"""

from __future__ import annotations

import gc
import random
import time
from itertools import combinations
from math import comb

import networkx as nx
import pytest

from pvgkit.audit import audit_embedding, hamiltonian_cycle, validate_cycle
from pvgkit.budget import Budget
from pvgkit.catalog import build_catalog, load_catalog
from pvgkit.fixtures import (
    SWAPPED_THIRTEEN_ASSIGNMENT,
    chorded_p5,
    swapped_thirteen_graph,
    thirteen_graph,
    thirteen_points,
)
from pvgkit.graph import Graph, brute_optima, is_path_graph
from pvgkit.necessary import (
    BlockerAssignment,
    check_nc1,
    run_checks,
    search_nc2,
    search_nc3,
    verify_assignment,
)
from pvgkit.planar import APEXES, FAMILIES, MIN_N, classify, family_template, iter_family_instances, reconstruct
from pvgkit.reductions import build_gadget, emit_etr, eval_etr
from pvgkit.visibility import build_pvg, build_pvg_naive

from conftest import random_point_set

RESULTS: dict[str, tuple[bool, str]] = {}


def record(key: str, ok: bool, detail: str) -> None:
    RESULTS[key] = (ok, detail)


def _embeddings_500():
    rng = random.Random(20261019)
    return [random_point_set(rng, rng.randint(1, 40), 100) for _ in range(500)]


@pytest.fixture(scope="module")
def point_sets_500():
    return _embeddings_500()


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# ---------------------------------------------------------------------------
# 1-3: construction, audits, Hamiltonicity
# ---------------------------------------------------------------------------


def test_criterion_1_oracle_equivalence(point_sets_500):
    t = time.perf_counter()
    mismatches = 0
    for pts in point_sets_500:
        a, b = build_pvg(pts), build_pvg_naive(pts)
        mismatches += a.graph != b.graph or a.blockers != b.blockers
    elapsed = time.perf_counter() - t
    ok = mismatches == 0 and elapsed < 30
    record("1", ok, f"500 point sets, {mismatches} mismatches, {elapsed:.1f}s (limit 30s)")
    assert ok


def test_criterion_2_audit_suite(point_sets_500):
    failures = []
    sampled = 0
    for idx, pts in enumerate(point_sets_500):
        report = audit_embedding(build_pvg(pts), blocker_samples=1, seed=idx)
        if not report.passed:
            failures.append((idx, [c.name for c in report.failures()]))
        w = report.check("blocker_bound").witness
        sampled += w["samples"] if w else 0
    ok = not failures and sampled >= 200
    record("2", ok, f"500 audits, {len(failures)} failing, {sampled} blocker-bound samples")
    assert ok, failures[:5]


def test_criterion_3_hamiltonicity():
    rng = random.Random(3)
    embs = []
    while len(embs) < 200:
        emb = build_pvg(random_point_set(rng, rng.randint(3, 30), 100))
        if not is_path_graph(emb.graph):
            embs.append(emb)
    t = time.perf_counter()
    bad = sum(not validate_cycle(e.graph, hamiltonian_cycle(e)) for e in embs)
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 10
    record("3", ok, f"200 embeddings, {bad} invalid cycles, {elapsed:.2f}s (limit 10s)")
    assert ok


# ---------------------------------------------------------------------------
# 4: planar characterisation
# ---------------------------------------------------------------------------


def _oracle_is_planar_pvg(g: Graph, cache: dict) -> bool:
    """networkx isomorphism against every family instance and catalog graph."""
    if g.n not in cache:
        graphs = [_nx(t) for _, _, t in iter_family_instances(g.n)]
        graphs += [_nx(e.graph) for e in load_catalog().entries if e.n == g.n]
        cache[g.n] = graphs
    h = _nx(g)
    return any(t.number_of_edges() == h.number_of_edges() and nx.is_isomorphic(t, h) for t in cache[g.n])


def _toggles():
    rng = random.Random(4)
    out = []
    while len(out) < 1000:
        fam = rng.choice(FAMILIES)
        n = rng.randint(max(3, MIN_N[fam]), 40)
        missed = rng.randint(1, n - APEXES[fam] - 2) if fam == "F" else None
        u, v = rng.sample(range(n), 2)
        out.append(family_template(fam, n, missed).toggle(u, v))
    return out


def test_criterion_4_planar_round_trip():
    wrong = []
    relabelled = 0
    too_big = 0
    checked = 0
    for fam in FAMILIES:
        for n in range(max(3, MIN_N[fam]), 41):
            k = n - APEXES[fam]
            for missed in (range(1, k - 1) if fam == "F" else [None]):
                g = family_template(fam, n, missed)
                c = classify(g)
                emb = reconstruct(c)
                checked += 1
                if emb.graph != g:
                    wrong.append((fam, n, missed, c.family))
                # tiny templates of different families can be the same graph
                relabelled += c.family != fam
                too_big += max(max(abs(x), abs(y)) for x, y in emb.points) > n
    cache: dict = {}
    disagree = 0
    negatives = 0
    for g in _toggles():
        verdict = classify(g).is_planar_pvg
        disagree += verdict != _oracle_is_planar_pvg(g, cache)
        negatives += not verdict
    ok = not wrong and too_big == 0 and disagree == 0
    RESULTS["4-toggles"] = (negatives == 1000, (
        f"literal clause: {negatives}/1000 toggles are NotPlanarPVG; the other {1000 - negatives} "
        "are family or catalog graphs per the isomorphism oracle, so the clause cannot hold"
    ))
    record(
        "4",
        ok,
        f"{checked} templates (n=3..40, every F gap) round-trip ({len(wrong)} failures, "
        f"{relabelled} reported under a coinciding family), {too_big} with coordinates > n; "
        f"1000 toggles agree with an isomorphism oracle ({disagree} disagreements)",
    )
    assert ok, wrong[:5]


@pytest.mark.xfail(
    strict=True,
    reason="some one-edge toggles of a template are themselves family or catalog graphs",
)
def test_criterion_4_literal_toggle_clause():
    negatives = sum(not classify(g).is_planar_pvg for g in _toggles())
    assert negatives == 1000


# ---------------------------------------------------------------------------
# 5: catalog
# ---------------------------------------------------------------------------


def test_criterion_5_catalog_reproduction():
    t = time.perf_counter()
    cat = build_catalog(7, 7, (6, 7))
    elapsed = time.perf_counter() - t
    shipped = load_catalog()
    same = [e.canonical for e in cat.entries] == [e.canonical for e in shipped.entries]
    counts = cat.counts()
    ok = cat.complete and counts == {6: 3, 7: 2} and same and elapsed < 900
    record("5", ok, f"7x7 grid: n=6 -> {counts[6]}, n=7 -> {counts[7]}, matches shipped catalog: {same}, {elapsed:.0f}s")
    assert ok


@pytest.mark.slow
def test_criterion_5_no_particular_graph_on_eight():
    cat = build_catalog(6, 6, (8,))
    ok = cat.complete and cat.counts() == {8: 0}
    record("5-n8", ok, f"6x6 grid, n=8 -> {cat.counts()[8]} classes")
    assert ok


# ---------------------------------------------------------------------------
# 6: necessary-condition fixtures
# ---------------------------------------------------------------------------


def test_criterion_6_necessary_conditions():
    c5 = check_nc1(Graph.cycle(5)).refuted
    p5 = search_nc2(chorded_p5())
    p5_ok = p5.refuted and p5.detail["violation"]["item"] == 2
    gp = swapped_thirteen_graph()
    gp_nc1 = check_nc1(gp).satisfied
    gp_nc2 = search_nc2(gp).satisfied
    printed = verify_assignment(gp, BlockerAssignment.from_items(SWAPPED_THIRTEEN_ASSIGNMENT)).satisfied
    g = thirteen_graph()
    g_real = build_pvg(thirteen_points()).graph == g
    g_all = run_checks(g).overall.value == "satisfied"
    gp_nc3 = search_nc3(gp, budget=Budget.unlimited())
    ok = all([c5, p5_ok, gp_nc1, gp_nc2, printed, g_real, g_all, gp_nc3.refuted])
    record(
        "6",
        ok,
        f"C5 NC1 refuted={c5}; chorded P5 NC2 item-2 refuted={p5_ok}; G' NC1={gp_nc1} NC2={gp_nc2} "
        f"printed 21-chain assignment={printed}; G realised={g_real} NC1-3={g_all}; "
        f"G' NC3 {gp_nc3.verdict.value} after {gp_nc3.stats['nodes']} nodes",
    )
    assert ok


# ---------------------------------------------------------------------------
# 7-8: reductions
# ---------------------------------------------------------------------------


def test_criterion_7_gadget_arithmetic():
    rng = random.Random(7)
    t = time.perf_counter()
    bad = 0
    for _ in range(30):
        n = rng.randint(1, 9)
        density = rng.random()
        g = Graph(n, [p for p in combinations(range(n), 2) if rng.random() < density])
        gd = build_gadget(g)
        k1, k2, k3 = brute_optima(g)
        bad += brute_optima(gd.graph) != (k1 + gd.x, k2, k3 + gd.x)
        bad += build_pvg(gd.points).graph != gd.graph
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 60
    record("7", ok, f"30 base graphs, {bad} spectrum or certification failures, {elapsed:.1f}s (limit 60s)")
    assert ok


def test_criterion_8_formula():
    counts_ok = all(len(emit_etr(Graph.path(n)).t_variables) == comb(n, 2) * (n - 2) for n in range(2, 13))
    rng = random.Random(8)
    true_ok = toggled_ok = 0
    for _ in range(100):
        pts = random_point_set(rng, rng.randint(2, 10), 5)
        g = build_pvg(pts).graph
        true_ok += eval_etr(g, pts)
        u, v = rng.sample(range(g.n), 2)
        toggled_ok += not eval_etr(g.toggle(u, v), pts)
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
    stable = emit_etr(g).to_smt2() == emit_etr(g).to_smt2()
    ok = counts_ok and true_ok == 100 and toggled_ok == 100 and stable
    record("8", ok, f"t-count rule n=2..12: {counts_ok}; true on {true_ok}/100; false after toggle {toggled_ok}/100; deterministic: {stable}")
    assert ok


# ---------------------------------------------------------------------------
# 9: performance
# ---------------------------------------------------------------------------


def _interleaved_best(funcs, rounds=7):
    """Best wall time per function, running them round-robin.

    Interleaving keeps slow spells on a shared host from landing on a
    single size and masquerading as growth.
    """
    best = [float("inf")] * len(funcs)
    gc.collect()
    gc.disable()
    try:
        for _ in range(rounds):
            for i, f in enumerate(funcs):
                t = time.perf_counter()
                f()
                best[i] = min(best[i], time.perf_counter() - t)
    finally:
        gc.enable()
    return best


def test_criterion_9_performance():
    rng = random.Random(9)
    pts = random_point_set(rng, 2000, 10**6)
    (build_time,) = _interleaved_best([lambda: build_pvg(pts)], rounds=1)
    worst = (0.0, "")
    for fam in FAMILIES:
        graphs = [family_template(fam, 10**e) for e in (3, 4, 5, 6)]
        times = _interleaved_best([lambda g=g: classify(g) for g in graphs])
        per = [t / (g.n + g.m) for t, g in zip(times, graphs)]
        for e, (a, b) in enumerate(zip(per, per[1:]), start=3):
            worst = max(worst, (b / a, f"{fam} 10^{e}->10^{e + 1}"))
        del graphs
    ok = build_time < 5 and worst[0] <= 1.3
    record(
        "9",
        ok,
        f"build_pvg n=2000 {build_time:.2f}s (limit 5s); classify time/(n+m) worst growth per decade "
        f"{worst[0]:.2f} at {worst[1]} (limit 1.3)",
    )
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
