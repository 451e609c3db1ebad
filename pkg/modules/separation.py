"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Separation oracles, moralisation, complexes and graphical equivalence
of chain graphs. Everything the imset side computes is checked against
these functions.
"""
import logging
from dataclasses import dataclass

from .errors import GuardExceededError
from .graph_core import (
    MixedGraph,
    Triplet,
    VertexSet,
    all_triplets,
    bits,
    components_within,
    reachable,
    require_chain,
    require_same_vertices,
    require_undirected,
)

logger = logging.getLogger(__name__)

MAX_MODEL_VERTICES = 8


# --- mask-level helpers shared with mpd/triangulate ---

def separated(adjacency, a: int, b: int, c: int, allowed: int) -> bool:
    """True iff every path from a to b inside allowed meets c."""
    return reachable(adjacency, a, allowed & ~c) & b == 0


def moral_adjacency(g: MixedGraph, mask: int) -> tuple[int, ...]:
    """Adjacency of the moral graph of the subgraph induced on mask."""
    adj = [row & mask for row in g.adjacency]
    for comp in components_within(g.neighbors, mask):
        pa = 0
        for v in bits(comp):
            pa |= g.parent_masks[v]
        pa &= mask
        for p in bits(pa):
            adj[p] |= pa & ~(1 << p)
    for v in range(len(adj)):
        if not (mask >> v & 1):
            adj[v] = 0
    return tuple(adj)


def _check_triplet(g: MixedGraph, t: Triplet):
    g.set_of(t.a)
    g.set_of(t.b)
    g.set_of(t.c)


# --- public oracles ---

def ug_separates(g: MixedGraph, t: Triplet) -> bool:
    """<A,B|C> holds in an undirected graph when C blocks every A-B path."""
    require_undirected(g, "ug_separates")
    _check_triplet(g, t)
    return separated(g.neighbors, t.a.mask, t.b.mask, t.c.mask, g.vertices.mask)


def moral_graph(g: MixedGraph) -> MixedGraph:
    require_chain(g, "moral_graph")
    adj = moral_adjacency(g, g.vertices.mask)
    pairs = frozenset((u, v) for u in bits(g.vertices.mask) for v in bits(adj[u]) if u < v)
    return MixedGraph(g.vertices, pairs)


def _cg_separated_masks(g: MixedGraph, a: int, b: int, c: int, moral_cache=None) -> bool:
    an = g.ancestral_set(VertexSet(g.universe, a | b | c)).mask
    if moral_cache is None:
        adj = moral_adjacency(g, an)
    else:
        adj = moral_cache.get(an)
        if adj is None:
            adj = moral_cache[an] = moral_adjacency(g, an)
    return separated(adj, a, b, c, an)


def cg_separates(g: MixedGraph, t: Triplet) -> bool:
    """Moralisation criterion: separate t in the moral graph of G restricted to an(ABC)."""
    require_chain(g, "cg_separates")
    _check_triplet(g, t)
    return _cg_separated_masks(g, t.a.mask, t.b.mask, t.c.mask)


# --- complexes ---

@dataclass(frozen=True, order=True)
class Complex:
    """An induced c0 -> c1 - ... - ck <- c(k+1); left_parent sorts before right_parent."""

    left_parent: str
    path: tuple[str, ...]
    right_parent: str

    def __str__(self):
        return f"{self.left_parent} -> {' -- '.join(self.path)} <- {self.right_parent}"


def complexes(g: MixedGraph) -> frozenset:
    """All complexes of a chain graph, found by chordless path search inside each component."""
    require_chain(g, "complexes")
    names = g.universe.labels
    adj, nb, ch = g.adjacency, g.neighbors, g.child_masks
    found = set()

    for comp in g.chain_components():
        cmask = comp.mask
        pa = g.parents(comp).mask
        members = list(bits(pa))
        for i, u in enumerate(members):
            for w in members[i + 1:]:
                if adj[u] >> w & 1:
                    continue

                def extend(path, covered):
                    last = path[-1]
                    if ch[w] >> last & 1:
                        found.add(Complex(names[u], tuple(names[x] for x in path), names[w]))
                        return
                    for y in bits(nb[last] & cmask & ~covered):
                        # chordless, and u/w touch only the path ends
                        if adj[y] & covered & ~(1 << last):
                            continue
                        if adj[u] >> y & 1:
                            continue
                        extend(path + [y], covered | 1 << y)

                for start in bits(ch[u] & cmask):
                    extend([start], 1 << start)

    logger.debug("found %d complexes", len(found))
    return frozenset(found)


def frydenberg_equivalent(g: MixedGraph, h: MixedGraph) -> bool:
    """Same skeleton and same complexes."""
    require_chain(g, "frydenberg_equivalent")
    require_chain(h, "frydenberg_equivalent")
    require_same_vertices(g, h, "frydenberg_equivalent")
    if g.edge_pairs() != h.edge_pairs():
        return False
    return complexes(g) == complexes(h)


def independence_model(g: MixedGraph, max_vertices: int = MAX_MODEL_VERTICES) -> tuple[Triplet, ...]:
    """M_G as a canonically sorted tuple, one triplet per unordered {A, B}."""
    require_chain(g, "independence_model")
    if len(g.vertices) > max_vertices:
        raise GuardExceededError("independence model vertices", max_vertices, len(g.vertices))
    cache: dict = {}
    model = [
        t for t in all_triplets(g.vertices)
        if _cg_separated_masks(g, t.a.mask, t.b.mask, t.c.mask, cache)
    ]
    model.sort(key=Triplet.sort_key)
    logger.info("independence model of %s has %d triplets", g.vertices, len(model))
    return tuple(model)


def elementary_model(g: MixedGraph) -> tuple[Triplet, ...]:
    """Elementary triplets <a,b|C> of M_G."""
    return tuple(t for t in independence_model(g) if t.is_elementary)
