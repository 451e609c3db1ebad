"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Chordality, maximal cliques, minimal vertex separators and the maximal
prime subgraph decomposition of undirected graphs.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import networkx as nx

from .errors import GuardExceededError, InternalInvariantError
from .graph_core import (
    MixedGraph,
    VertexSet,
    bits,
    components_within,
    popcount,
    require_undirected,
)

logger = logging.getLogger(__name__)

MAX_SEPARATOR_VERTICES = 16


def is_chordal(g: MixedGraph) -> bool:
    """Maximum cardinality search; every cycle of length >= 4 must have a chord."""
    require_undirected(g, "is_chordal")
    return nx.is_chordal(g.to_networkx())


def maximal_cliques(g: MixedGraph) -> list[VertexSet]:
    """Inclusion-maximal cliques sorted by set encoding; [∅] for a graph without vertices."""
    require_undirected(g, "maximal_cliques")
    if not g.vertices:
        return [g.universe.empty()]
    masks = sorted(sum(1 << v for v in clique) for clique in nx.find_cliques(g.to_networkx()))
    return [VertexSet(g.universe, m) for m in masks]


# --- minimal separators ---

def _neighborhood(adjacency, mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= adjacency[v]
    return out & ~mask


def _all_minimal_separators(adjacency, vertices: int) -> list[int]:
    """Every minimal separator of the graph on vertices, by closing the
    neighbourhood-of-component generators under the x-in-S step."""
    found: set[int] = set()
    queue: list[int] = []

    def collect(removed: int):
        for comp in components_within(adjacency, vertices & ~removed):
            sep = _neighborhood(adjacency, comp) & vertices
            if sep not in found:
                found.add(sep)
                queue.append(sep)

    for v in bits(vertices):
        collect((adjacency[v] & vertices) | 1 << v)
    while queue:
        sep = queue.pop()
        for x in bits(sep):
            collect(sep | (adjacency[x] & vertices))
    return sorted(s for s in found if _is_separator(adjacency, s, vertices))


def _full_components(adjacency, sep: int, vertices: int) -> list[int]:
    return [
        comp for comp in components_within(adjacency, vertices & ~sep)
        if _neighborhood(adjacency, comp) & vertices == sep
    ]


def _is_separator(adjacency, sep: int, vertices: int) -> bool:
    return len(_full_components(adjacency, sep, vertices)) >= 2


def minimal_vertex_separators(g: MixedGraph, max_vertices: int = MAX_SEPARATOR_VERTICES) -> list[VertexSet]:
    """All minimal (u,v)-separators over non-adjacent pairs, sorted by encoding."""
    require_undirected(g, "minimal_vertex_separators")
    if len(g.vertices) > max_vertices:
        raise GuardExceededError("minimal separator vertices", max_vertices, len(g.vertices))
    return [VertexSet(g.universe, s) for s in _all_minimal_separators(g.neighbors, g.vertices.mask)]


def minimal_uv_separators(g: MixedGraph, u: str, v: str) -> list[VertexSet]:
    """Minimal separators with u and v in two distinct full components."""
    require_undirected(g, "minimal_uv_separators")
    iu, iv = g.universe.index[u], g.universe.index[v]
    if g.adjacency[iu] >> iv & 1 or iu == iv:
        return []
    return [VertexSet(g.universe, s) for s in _uv_separator_masks(g.neighbors, g.vertices.mask, iu, iv)]


def _uv_separator_masks(adjacency, vertices: int, u: int, v: int) -> list[int]:
    out = []
    for sep in _all_minimal_separators(adjacency, vertices):
        if sep >> u & 1 or sep >> v & 1:
            continue
        full = _full_components(adjacency, sep, vertices)
        cu = next((c for c in full if c >> u & 1), None)
        cv = next((c for c in full if c >> v & 1), None)
        if cu is not None and cv is not None and cu != cv:
            out.append(sep)
    return out


def _is_clique_mask(adjacency, mask: int) -> bool:
    return all((adjacency[v] | 1 << v) & mask == mask for v in bits(mask))


def clique_minimal_separators(g: MixedGraph) -> list[VertexSet]:
    require_undirected(g, "clique_minimal_separators")
    return [
        VertexSet(g.universe, s)
        for s in _all_minimal_separators(g.neighbors, g.vertices.mask)
        if _is_clique_mask(g.neighbors, s)
    ]


# --- maximal prime decomposition ---

@dataclass(frozen=True)
class MpDecomposition:
    """mp-components, separator multiplicities and one D-ordered sequence."""

    components: tuple[VertexSet, ...]
    separators: dict = field(default_factory=dict)
    order: tuple[VertexSet, ...] = ()

    def sequence_separators(self) -> list[VertexSet]:
        """S_2 ... S_m realised by the order."""
        out = []
        seen = 0
        for i, comp in enumerate(self.order):
            if i:
                out.append(VertexSet(comp.universe, comp.mask & seen))
            seen |= comp.mask
        return out

    def rip_holds(self) -> bool:
        seen = 0
        for i, comp in enumerate(self.order):
            if i:
                s = comp.mask & seen
                if not any(s & ~prev.mask == 0 for prev in self.order[:i]):
                    return False
            seen |= comp.mask
        return True

    def separator_counts(self) -> dict:
        counts: dict = {}
        for s in self.sequence_separators():
            counts[s] = counts.get(s, 0) + 1
        return counts


def _prime_pieces(adjacency, vertices: int) -> list[int]:
    """Split recursively along clique minimal separators; leaves are prime."""
    parts = components_within(adjacency, vertices)
    if len(parts) > 1:
        return [leaf for part in parts for leaf in _prime_pieces(adjacency, part)]
    seps = [s for s in _all_minimal_separators(adjacency, vertices) if _is_clique_mask(adjacency, s)]
    if not seps:
        return [vertices]
    sep = min(seps, key=lambda s: (popcount(s), s))
    leaves = []
    for comp in components_within(adjacency, vertices & ~sep):
        piece = comp | (_neighborhood(adjacency, comp) & sep)
        leaves.extend(_prime_pieces(adjacency, piece))
    return leaves


def mp_components_masks(adjacency, vertices: int) -> list[int]:
    if not vertices:
        return [0]
    leaves = set(_prime_pieces(adjacency, vertices))
    return sorted(m for m in leaves if not any(m != o and m & ~o == 0 for o in leaves))


def _junction_order(universe, masks: list[int]) -> tuple[tuple[VertexSet, ...], dict]:
    """D-ordered sequence and separator multiplicities from a maximum-weight spanning tree."""
    tree_source = nx.Graph()
    tree_source.add_nodes_from(range(len(masks)))
    for i, j in combinations(range(len(masks)), 2):
        tree_source.add_edge(i, j, weight=popcount(masks[i] & masks[j]))
    tree = nx.maximum_spanning_tree(tree_source)

    order = []
    separators: dict = {}
    seen = set()
    stack = [0]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        order.append(node)
        for nxt in sorted(tree.neighbors(node), reverse=True):
            if nxt not in seen:
                stack.append(nxt)
    for i, j in tree.edges():
        s = VertexSet(universe, masks[i] & masks[j])
        separators[s] = separators.get(s, 0) + 1
    ordered = tuple(VertexSet(universe, masks[i]) for i in order)
    return ordered, dict(sorted(separators.items(), key=lambda kv: kv[0].mask))


def mpd_decompose(g: MixedGraph) -> MpDecomposition:
    """Maximal prime subgraph decomposition of an undirected graph."""
    require_undirected(g, "mpd_decompose")
    masks = mp_components_masks(g.neighbors, g.vertices.mask)
    order, separators = _junction_order(g.universe, masks)
    decomposition = MpDecomposition(tuple(VertexSet(g.universe, m) for m in masks), separators, order)
    if decomposition.separator_counts() != separators or not decomposition.rip_holds():
        raise InternalInvariantError(f"mp decomposition of {g} is not D-ordered")
    logger.debug("mp decomposition: %d components, separators %s",
                 len(masks), {str(k): v for k, v in separators.items()})
    return decomposition


def is_decomposable(g: MixedGraph) -> bool:
    """All mp-components are cliques."""
    require_undirected(g, "is_decomposable")
    return all(g.is_clique(c) for c in mpd_decompose(g).components)


def mp_completion(g: MixedGraph, decomposition: Optional[MpDecomposition] = None) -> MixedGraph:
    """Chordal graph whose maximal cliques are the mp-components of g."""
    require_undirected(g, "mp_completion")
    decomposition = decomposition or mpd_decompose(g)
    pairs = set(g.undirected)
    for comp in decomposition.components:
        pairs.update(combinations(comp.indices(), 2))
    return MixedGraph(g.vertices, frozenset(pairs))
