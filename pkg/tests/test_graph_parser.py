import io

import pytest

from modules.errors import GraphParseError
from modules.graph_core import GraphClass, Universe
from modules.graph_parser import (
    format_graph,
    graph_stats,
    parse_graph,
    parse_graph_text,
    parse_triplet,
    parse_vertex_set,
)
from tests.conftest import CG_TEXT, CYCLE_TRIANGLE_TEXT


def test_parse_chain_graph():
    g = parse_graph_text(CG_TEXT)
    assert g.vertices.labels == ("a", "b", "c", "d")
    assert g.has_directed("a", "c") and g.has_directed("b", "d")
    assert g.has_undirected("d", "c")
    assert g.classify() is GraphClass.CG


def test_parse_from_path_and_file(cycle_triangle_file):
    from_path = parse_graph(cycle_triangle_file)
    with open(cycle_triangle_file) as fh:
        from_handle = parse_graph(fh)
    assert from_path == from_handle == parse_graph(io.StringIO(CYCLE_TRIANGLE_TEXT))


def test_format_is_parseable(cg_example):
    assert parse_graph_text(format_graph(cg_example)) == cg_example


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertex a\nvertex a\n", 2),
        ("vertex a\n\nedge a -- b\n", 3),
        ("vertex a\nedge a -- a\n", 2),
        ("node a\n", 1),
        ("vertex a\nvertex b\nedge a -- b\nedge b -> a\n", 4),
        ("vertex a\nvertex b\nedge a => b\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphParseError) as err:
        parse_graph_text(text)
    assert err.value.line_number == line
    assert f"line {line}" in str(err.value)


def test_comments_and_blank_lines_ignored():
    g = parse_graph_text("# header\n\nvertex x  # trailing\nvertex y\nedge x -> y\n")
    assert g.classify() is GraphClass.DAG


def test_vertex_set_and_triplet_text():
    universe = Universe.from_labels("abcd")
    assert parse_vertex_set(universe, "{a, c}").labels == ("a", "c")
    assert not parse_vertex_set(universe, "{}")
    t = parse_triplet(universe, "a|b|c,d")
    assert (t.a.labels, t.b.labels, t.c.labels) == (("a",), ("b",), ("c", "d"))
    assert not parse_triplet(universe, "a|b").c
    with pytest.raises(GraphParseError):
        parse_vertex_set(universe, "a,a")
    with pytest.raises(GraphParseError):
        parse_triplet(universe, "a|z")
    with pytest.raises(GraphParseError):
        parse_triplet(universe, "a")


def test_graph_stats(cg_example):
    assert graph_stats(cg_example) == {
        "vertices": 4,
        "undirected_edges": 1,
        "directed_edges": 2,
        "class": "CG-proper",
        "chain_components": 3,
    }
