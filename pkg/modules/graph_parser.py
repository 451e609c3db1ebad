"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Graph, triplet and vertex-set text formats.

    # comments and blank lines are ignored
    vertex a
    edge a -- b
    edge a -> c

Several graphs in one stream are separated by marker lines

    # --- triangulation 1 ---

which parse_graph_blocks splits on.
"""
import io
import logging
from os import PathLike
from typing import Union

from .errors import GraphParseError, GraphStructureError, UnknownVertexError
from .graph_core import MixedGraph, Triplet, Universe, VertexSet

logger = logging.getLogger(__name__)

Source = Union[str, PathLike, io.TextIOBase]
BLOCK_MARKER = "# --- "


def _read_lines(source: Source) -> list[str]:
    if hasattr(source, "read"):
        return source.read().splitlines()
    if isinstance(source, str) and "\n" in source:
        return source.splitlines()
    with open(source, encoding="utf-8") as fh:
        return fh.read().splitlines()


def parse_graph_text(text: str) -> MixedGraph:
    """Parse graph text given as a string."""
    vertices: list[str] = []
    seen_vertices: set[str] = set()
    edges: list[tuple[int, str, str, str, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "vertex":
            if len(tokens) != 2:
                raise GraphParseError("expected 'vertex <label>'", number, raw)
            label = tokens[1]
            if label in seen_vertices:
                raise GraphParseError(f"duplicate vertex {label!r}", number, raw)
            seen_vertices.add(label)
            vertices.append(label)
        elif keyword == "edge":
            if len(tokens) != 4 or tokens[2] not in ("--", "->"):
                raise GraphParseError("expected 'edge <a> -- <b>' or 'edge <a> -> <b>'", number, raw)
            edges.append((number, raw, tokens[1], tokens[2], tokens[3]))
        else:
            raise GraphParseError(f"unknown keyword {keyword!r}", number, raw)

    undirected, directed = [], []
    seen_pairs: dict[frozenset, int] = {}
    for number, raw, a, kind, b in edges:
        for label in (a, b):
            if label not in seen_vertices:
                raise GraphParseError(f"unknown vertex {label!r}", number, raw)
        if a == b:
            raise GraphParseError(f"self-loop at {a!r}", number, raw)
        pair = frozenset((a, b))
        if pair in seen_pairs:
            raise GraphParseError(f"duplicate edge between {a!r} and {b!r} (first on line {seen_pairs[pair]})", number, raw)
        seen_pairs[pair] = number
        (undirected if kind == "--" else directed).append((a, b))

    try:
        graph = MixedGraph.from_labels(vertices, undirected, directed)
    except (GraphStructureError, UnknownVertexError) as e:
        raise GraphParseError(str(e)) from e
    logger.debug("parsed %s", graph)
    return graph


def parse_graph(source: Source) -> MixedGraph:
    """Parse a graph from a path, an open file, or multi-line text."""
    return parse_graph_text("\n".join(_read_lines(source)))


def format_graph(g: MixedGraph) -> str:
    names = g.universe.labels
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {names[u]} -- {names[v]}" for u, v in sorted(g.undirected)]
    lines += [f"edge {names[u]} -> {names[v]}" for u, v in sorted(g.directed)]
    return "\n".join(lines) + "\n"


def parse_graph_blocks(source: Source) -> list[tuple[str, MixedGraph]]:
    """Split a graph stream on '# --- name ---' lines and parse each block.

    Lines before the first marker, such as '# key: value' facts, are skipped.
    """
    blocks: list[tuple[str, list[str]]] = []
    for raw in _read_lines(source):
        line = raw.strip()
        if line.startswith(BLOCK_MARKER) and line.endswith("---"):
            blocks.append((line[len(BLOCK_MARKER):-3].strip(), []))
        elif blocks:
            blocks[-1][1].append(raw)
    return [(name, parse_graph_text("\n".join(lines))) for name, lines in blocks]


def parse_vertex_set(universe: Universe, text: str) -> VertexSet:
    """Comma-separated labels, optionally wrapped in braces; '' and '{}' are the empty set."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    labels = [t.strip() for t in text.split(",") if t.strip()]
    if len(set(labels)) != len(labels):
        raise GraphParseError(f"repeated label in vertex set {text!r}")
    try:
        return universe.vertex_set(labels)
    except UnknownVertexError as e:
        raise GraphParseError(str(e)) from e


def parse_triplet(universe: Universe, text: str) -> Triplet:
    """Parse 'A|B|C' (C may be empty, the last bar is optional when it is)."""
    parts = text.strip().split("|")
    if len(parts) == 2:
        parts.append("")
    if len(parts) != 3:
        raise GraphParseError(f"expected 'A|B|C', got {text!r}")
    a, b, c = (parse_vertex_set(universe, p) for p in parts)
    return Triplet(a, b, c)


def graph_stats(g: MixedGraph) -> dict:
    """Summary counts for display."""
    return {
        "vertices": len(g.vertices),
        "undirected_edges": len(g.undirected),
        "directed_edges": len(g.directed),
        "class": g.classify().value,
        "chain_components": len(g.chain_components()) if g.is_chain else 0,
    }
