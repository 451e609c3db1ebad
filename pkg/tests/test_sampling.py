import numpy as np
from hypothesis import given
import hypothesis.strategies as st
import pytest

from modules.sampling import all_chain_graphs, all_undirected_graphs, labels_for, random_cg, random_dag, random_graph, random_ug


def test_labels():
    assert labels_for(3) == ["a", "b", "c"]
    assert labels_for(30)[0] == "v00"


def test_seeded_graphs_repeat():
    assert random_cg(5, 0.5, 11) == random_cg(5, 0.5, 11)
    assert random_ug(5, 0.5, 3) == random_ug(5, 0.5, 3)


def test_shared_generator_advances():
    rng = np.random.default_rng(0)
    graphs = {random_ug(6, 0.5, rng) for _ in range(10)}
    assert len(graphs) > 1


@given(st.integers(min_value=1, max_value=7), st.floats(min_value=0, max_value=1), st.integers(min_value=0, max_value=1000))
def test_random_graph_classes(n, p, seed):
    assert random_cg(n, p, seed).is_chain
    assert random_dag(n, p, seed).is_dag
    assert random_ug(n, p, seed).is_undirected


def test_unknown_kind():
    with pytest.raises(ValueError):
        random_graph("pdag", 3)


def test_enumerators():
    assert sum(1 for _ in all_undirected_graphs(3)) == 8
    assert sum(1 for _ in all_chain_graphs(2)) == 4
    # 3 vertices: every chain graph, directed cycles excluded
    graphs = list(all_chain_graphs(3))
    assert all(g.is_chain for g in graphs)
    assert len(set(graphs)) == len(graphs)
