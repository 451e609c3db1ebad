"""Exhaustive cross-checks over every small graph; run with -m slow."""
from collections import defaultdict
from itertools import combinations

import pytest

from modules.mpd import is_chordal
from modules.sampling import all_chain_graphs, all_undirected_graphs, random_cg, random_ug
from modules.separation import (
    cg_separates,
    elementary_model,
    frydenberg_equivalent,
    independence_model,
    ug_separates,
)
from modules.standard import (
    imset_model,
    largest_equivalent,
    smallest_degree_search,
    standard_imset_cg,
    standard_imset_dag,
    standard_imset_ug,
)
from modules.triangulate import (
    brute_force_minimal_triangulations,
    cg_minimal_triangulations,
    closure_graph,
    dag_equivalence_diagnostics,
    is_dag_equivalent,
    minimal_triangulations,
)
from tests.conftest import cycle

pytestmark = pytest.mark.slow


def test_every_chain_graph_on_three_vertices():
    for g in all_chain_graphs(3):
        assert imset_model(standard_imset_cg(g), g.vertices) == independence_model(g), str(g)


def test_every_undirected_graph_on_four_vertices():
    for g in all_undirected_graphs(4):
        u = standard_imset_ug(g)
        assert imset_model(u, g.vertices) == independence_model(g), str(g)


def test_every_undirected_graph_on_five_vertices_elementary():
    for g in all_undirected_graphs(5):
        u = standard_imset_ug(g)
        assert imset_model(u, g.vertices, elementary_only=True) == elementary_model(g), str(g)


def test_triangulations_of_every_graph_on_five_vertices():
    for g in all_undirected_graphs(5):
        found = minimal_triangulations(g)
        assert found == brute_force_minimal_triangulations(g), str(g)
        assert all(is_chordal(h) for h in found)


def test_equivalence_tests_agree_on_three_vertices():
    graphs = list(all_chain_graphs(3))
    imsets = {g: standard_imset_cg(g) for g in graphs}
    for g, h in combinations(graphs, 2):
        assert (imsets[g] == imsets[h]) == frydenberg_equivalent(g, h), f"{g} vs {h}"


def test_merging_stays_in_the_class():
    for g in all_chain_graphs(3):
        h = largest_equivalent(g)
        assert frydenberg_equivalent(g, h), str(g)
        assert standard_imset_cg(h) == standard_imset_cg(g)
        assert h.edge_pairs() == g.edge_pairs()
        assert len(h.undirected) >= len(g.undirected)


def test_random_chain_graphs_on_five_vertices():
    for seed in range(200):
        g = random_cg(5, 0.5, seed)
        assert imset_model(standard_imset_cg(g), g.vertices) == independence_model(g), f"seed {seed}: {g}"


def test_chain_formula_reduces_on_four_vertices():
    for g in all_chain_graphs(4):
        u = standard_imset_cg(g)
        if g.is_undirected:
            assert u == standard_imset_ug(g), str(g)
        if g.is_dag:
            assert u == standard_imset_dag(g), str(g)


def test_equivalence_tests_agree_on_same_skeleton_pairs():
    by_skeleton = defaultdict(list)
    for g in all_chain_graphs(4):
        by_skeleton[g.edge_pairs()].append(g)
    pairs = 0
    for graphs in by_skeleton.values():
        imsets = {g: standard_imset_cg(g) for g in graphs}
        for g, h in combinations(graphs, 2):
            assert (imsets[g] == imsets[h]) == frydenberg_equivalent(g, h), f"{g} vs {h}"
            pairs += 1
    assert pairs > len(by_skeleton)


def test_triangulations_of_random_graphs_on_six_vertices():
    for seed in range(500):
        g = random_ug(6, 0.5, seed)
        assert minimal_triangulations(g) == brute_force_minimal_triangulations(g), f"seed {seed}: {g}"


def test_some_minimal_triangulation_keeps_each_separation():
    for n in range(2, 6):
        for g in all_undirected_graphs(n):
            triangulations = minimal_triangulations(g)
            for t in independence_model(g):
                assert any(ug_separates(h, t) for h in triangulations), f"{g}: {t}"


def test_some_chain_graph_triangulation_keeps_each_separation():
    for n in range(2, 5):
        for g in all_chain_graphs(n):
            triangulations = cg_minimal_triangulations(g)
            for t in independence_model(g):
                assert any(cg_separates(h, t) for h in triangulations), f"{g}: {t}"


def test_chordal_closures_survive_triangulation():
    for g in all_chain_graphs(4):
        kept = [c for c in g.chain_components() if is_chordal(closure_graph(g, c))]
        for h in cg_minimal_triangulations(g):
            assert is_dag_equivalent(h), f"{g} -> {h}"
            for c in kept:
                region = c | g.parents(c)
                assert h.induced_subgraph(region) == g.induced_subgraph(region), f"{g} -> {h}"
                assert closure_graph(h, c) == closure_graph(g, c), f"{g} -> {h}"


def test_dag_equivalence_diagnostics_match_closure_chordality():
    for g in all_chain_graphs(4):
        found = dag_equivalence_diagnostics(g)
        for d in found:
            assert d.conditions_hold == d.closure_chordal, f"{g}: {d}"
        assert is_dag_equivalent(g) == all(d.closure_chordal for d in found)


def test_smallest_degree_on_the_five_cycle(record_property):
    g = cycle(5)
    found = smallest_degree_search(g, max_degree=6)
    record_property("five_cycle_smallest_degree", found.degree if found else "above 6")
    if found is not None:
        assert found.degree < 15
        assert found.decomposition.total(g.universe) == found.imset
