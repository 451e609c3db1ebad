import networkx as nx
import pytest
from hypothesis import given
import hypothesis.strategies as st

from modules.errors import (
    GraphClassError,
    GraphStructureError,
    GuardExceededError,
    InvalidTripletError,
    UniverseMismatchError,
    UnknownVertexError,
)
from modules.graph_core import (
    GraphClass,
    MixedGraph,
    Triplet,
    Universe,
    all_triplets,
    bits,
    elementary_triplets,
    popcount,
    submasks,
)
from modules.sampling import all_undirected_graphs
from tests.conftest import cg, ug


def test_universe_sorts_labels_and_masks():
    universe = Universe.from_labels(["c", "a", "b"])
    assert universe.labels == ("a", "b", "c")
    assert universe.mask_of(["a", "c"]) == 0b101
    assert universe.labels_of(0b110) == ("b", "c")


def test_universe_rejects_unknown_label():
    with pytest.raises(UnknownVertexError):
        Universe.from_labels("ab").mask_of(["z"])


def test_universe_guard():
    with pytest.raises(GuardExceededError):
        Universe.from_labels([f"v{i:02d}" for i in range(33)])


def test_vertex_set_operations():
    universe = Universe.from_labels("abcd")
    x, y = universe.vertex_set(["a", "b"]), universe.vertex_set(["b", "c"])
    assert (x | y).labels == ("a", "b", "c")
    assert (x & y).labels == ("b",)
    assert (x - y).labels == ("a",)
    assert x.complement().labels == ("c", "d")
    assert str(universe.empty()) == "{}"
    assert str(x) == "{a,b}"
    assert "a" in x and "c" not in x


def test_vertex_sets_from_different_universes_do_not_mix():
    x = Universe.from_labels("ab").vertex_set("a")
    y = Universe.from_labels("abc").vertex_set("a")
    with pytest.raises(UniverseMismatchError):
        x | y


@given(st.integers(min_value=0, max_value=255))
def test_submasks_enumerates_every_subset(mask):
    subs = list(submasks(mask))
    assert len(subs) == len(set(subs)) == 2 ** popcount(mask)
    assert all(s & ~mask == 0 for s in subs)


def test_bits_lowest_first():
    assert list(bits(0b10110)) == [1, 2, 4]


def test_triplet_validation():
    universe = Universe.from_labels("abc")
    with pytest.raises(InvalidTripletError):
        Triplet.from_labels(universe, "a", "a")
    with pytest.raises(InvalidTripletError):
        Triplet.from_labels(universe, [], "b")
    t = Triplet.from_labels(universe, "b", "a", "c")
    assert str(t) == "b|a|c"
    assert str(t.canonical()) == "a|b|c"
    assert t.is_elementary


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 6), (4, 24)])
def test_elementary_triplet_counts(n, expected):
    universe = Universe.from_labels("abcdef"[:n])
    assert len(list(elementary_triplets(universe.full()))) == expected


def test_all_triplets_are_canonical_and_unique():
    universe = Universe.from_labels("abcd")
    found = list(all_triplets(universe.full()))
    keys = {t.sort_key() for t in found}
    assert len(keys) == len(found) == 55
    assert all(t.a.mask < t.b.mask for t in found)


def test_classify():
    assert ug("abc", "ab").classify() is GraphClass.UG
    assert cg("abc", arrows=["ab", "bc"]).classify() is GraphClass.DAG
    assert cg("abc", lines=["ab"], arrows=["bc"]).classify() is GraphClass.CG
    assert cg("abc", arrows=["ab", "bc", "ca"]).classify() is GraphClass.NOT_CG
    # directed cycle through a line
    assert cg("abc", lines=["ab"], arrows=["bc", "ca"]).classify() is GraphClass.NOT_CG


def test_edgeless_graph_is_undirected():
    assert ug("abc").classify() is GraphClass.UG


def test_conflicting_edges_rejected():
    with pytest.raises(GraphStructureError):
        cg("ab", lines=["ab"], arrows=["ab"])
    with pytest.raises(GraphStructureError):
        cg("ab", arrows=["ab", "ba"])
    with pytest.raises(GraphStructureError):
        MixedGraph.from_labels("a", [("a", "a")])


def test_chain_components_in_topological_order(cg_example):
    comps = [c.labels for c in cg_example.chain_components()]
    assert comps == [("a",), ("b",), ("c", "d")]
    assert cg_example.parents(["c", "d"]).labels == ("a", "b")
    assert cg_example.children(["a"]).labels == ("c",)


def test_chain_components_need_chain_graph():
    with pytest.raises(GraphClassError):
        cg("abc", arrows=["ab", "bc", "ca"]).chain_components()


def test_ancestral_set_follows_lines_and_arrows(cg_example):
    assert cg_example.ancestral_set(["c"]).labels == ("a", "b", "c", "d")
    assert cg_example.ancestral_set(["a"]).labels == ("a",)


def test_induced_subgraph_and_clique(three_cliques):
    sub = three_cliques.induced_subgraph(["a", "b", "c"])
    assert len(sub.undirected) == 3
    assert three_cliques.is_clique(["a", "c", "d"])
    assert not three_cliques.is_clique(["a", "b", "d"])
    assert three_cliques.is_clique([])


def test_adjacency_queries(cg_example):
    assert cg_example.adjacent("c", "a") and cg_example.adjacent("a", "c")
    assert cg_example.has_directed("a", "c") and not cg_example.has_directed("c", "a")
    assert cg_example.has_undirected("d", "c")
    assert not cg_example.adjacent("a", "b")
    with pytest.raises(UnknownVertexError):
        cg_example.adjacent("a", "z")
    with pytest.raises(UnknownVertexError):
        cg_example.has_undirected("z", "c")
    with pytest.raises(UnknownVertexError):
        cg_example.induced_subgraph(["a", "b"]).has_directed("a", "c")


def test_connected_labelled_graphs_on_four_vertices():
    connected = [g for g in all_undirected_graphs(4) if nx.is_connected(g.to_networkx())]
    assert len(connected) == 38
