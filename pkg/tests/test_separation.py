import pytest
from hypothesis import given
import hypothesis.strategies as st

from modules.errors import GraphClassError, GuardExceededError, UniverseMismatchError
from modules.graph_core import Triplet
from modules.sampling import random_cg
from modules.separation import (
    Complex,
    cg_separates,
    complexes,
    elementary_model,
    frydenberg_equivalent,
    independence_model,
    moral_graph,
    ug_separates,
)
from tests.conftest import cg, ug


def t(g, a, b, c=()):
    return Triplet.from_labels(g.universe, a, b, c)


def test_ug_separation(cycle_triangle):
    assert ug_separates(cycle_triangle, t(cycle_triangle, "a", "c", ["b", "d"]))
    assert ug_separates(cycle_triangle, t(cycle_triangle, ["a", "b"], "e", ["c", "d"]))
    assert not ug_separates(cycle_triangle, t(cycle_triangle, "a", "c", "b"))
    with pytest.raises(GraphClassError):
        ug_separates(cg("ab", arrows=["ab"]), Triplet.from_labels(cg("ab", arrows=["ab"]).universe, "a", "b"))


def test_moral_graph_marries_component_parents(cg_example):
    m = moral_graph(cg_example)
    assert m.has_undirected("a", "b")
    assert len(m.undirected) == 4


def test_chain_graph_separation(cg_example):
    g = cg_example
    assert cg_separates(g, t(g, "a", "b"))
    assert not cg_separates(g, t(g, "a", "b", "c"))
    assert cg_separates(g, t(g, "a", "d", ["b", "c"]))
    assert cg_separates(g, t(g, "b", "c", ["a", "d"]))
    assert not cg_separates(g, t(g, "a", "d", "c"))


def test_collider_in_dag():
    g = cg("abc", arrows=["ac", "bc"])
    assert cg_separates(g, t(g, "a", "b"))
    assert not cg_separates(g, t(g, "a", "b", "c"))


def test_complexes(cg_example):
    assert complexes(cg_example) == {Complex("a", ("c", "d"), "b")}
    assert complexes(cg("abc", arrows=["ac", "bc"])) == {Complex("a", ("c",), "b")}
    assert complexes(cg("abc", arrows=["ab", "bc"])) == set()
    assert str(Complex("a", ("c", "d"), "b")) == "a -> c -- d <- b"


def test_frydenberg_equivalence():
    chain = cg("abc", arrows=["ab", "bc"])
    fork = cg("abc", arrows=["ba", "bc"])
    collider = cg("abc", arrows=["ab", "cb"])
    line = ug("abc", "ab", "bc")
    assert frydenberg_equivalent(chain, fork)
    assert frydenberg_equivalent(chain, line)
    assert not frydenberg_equivalent(chain, collider)
    assert not frydenberg_equivalent(line, ug("abc", "ab"))
    with pytest.raises(UniverseMismatchError):
        frydenberg_equivalent(line, ug("abcd", "ab", "bc"))


def test_independence_model_is_sorted_and_canonical(cycle_triangle):
    model = independence_model(cycle_triangle)
    keys = [x.sort_key() for x in model]
    assert keys == sorted(keys)
    assert all(x.a.mask < x.b.mask for x in model)
    assert all(ug_separates(cycle_triangle, x) for x in model)


def test_elementary_model_of_edgeless_graph():
    g = ug("abc")
    assert len(elementary_model(g)) == 6


def test_independence_model_guard():
    with pytest.raises(GuardExceededError):
        independence_model(ug("abcdefghi"))


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=10_000))
def test_undirected_graph_separation_agrees_with_moralisation(n, seed):
    g = random_cg(n, 0.5, seed).underlying()
    for x in independence_model(g):
        assert cg_separates(g, x) == ug_separates(g, x)
