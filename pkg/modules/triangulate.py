"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Minimal triangulations of undirected graphs (per mp-component) and of
chain graphs (per closure graph).
"""
import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import prod

import networkx as nx

from .errors import (
    GraphClassError,
    GuardExceededError,
    InternalInvariantError,
    MissingEdgesError,
    NotChainComponentError,
    NotChordalError,
)
from .graph_core import (
    MixedGraph,
    Triplet,
    VertexSet,
    bits,
    popcount,
    reachable,
    require_chain,
    require_same_vertices,
    require_undirected,
)
from .mpd import (
    _all_minimal_separators,
    _full_components,
    _is_clique_mask,
    _neighborhood,
    is_chordal,
    mpd_decompose,
)
from .separation import moral_graph, separated

logger = logging.getLogger(__name__)

MAX_PRIME_VERTICES = 12
MAX_TRIANGULATIONS = 10_000
MAX_PRODUCT = 1_000_000
MAX_FILL_CANDIDATES = 20
MAX_ORACLE_CANDIDATES = 16

STRATEGIES = ("elimination", "fill-subset")


def _non_edges(g: MixedGraph) -> list[tuple[int, int]]:
    adj = g.adjacency
    return [(u, v) for u, v in combinations(g.vertices.indices(), 2) if not (adj[u] >> v & 1)]


def _with_fill(g: MixedGraph, pairs) -> MixedGraph:
    return MixedGraph(g.vertices, g.undirected | frozenset(pairs), g.directed)


def _fill_key(g: MixedGraph, base: MixedGraph):
    return tuple(sorted(g.edge_pairs() - base.edge_pairs()))


def _sorted_by_fill(graphs, base: MixedGraph) -> list[MixedGraph]:
    return sorted(graphs, key=lambda h: (len(h.edge_pairs()), _fill_key(h, base)))


def _chordal_with(g: MixedGraph, pairs) -> bool:
    graph = g.to_networkx()
    graph.add_edges_from(pairs)
    return nx.is_chordal(graph)


# --- minimality ---

def is_minimal_triangulation(h: MixedGraph, h2: MixedGraph) -> bool:
    """No minimal (u,v)-separator of h is a clique in h2, for each fill edge u-v."""
    require_undirected(h, "is_minimal_triangulation")
    require_undirected(h2, "is_minimal_triangulation")
    require_same_vertices(h, h2, "is_minimal_triangulation")
    missing = h.edge_pairs() - h2.edge_pairs()
    if missing:
        names = h.universe.labels
        raise MissingEdgesError("triangulation misses edges " + ", ".join(f"{names[u]}-{names[v]}" for u, v in sorted(missing)))
    if not is_chordal(h2):
        raise NotChordalError(f"{h2} is not chordal")
    vertices = h.vertices.mask
    separators = _all_minimal_separators(h.neighbors, vertices)
    for u, v in h2.edge_pairs() - h.edge_pairs():
        for sep in separators:
            if sep >> u & 1 or sep >> v & 1:
                continue
            full = _full_components(h.neighbors, sep, vertices)
            sides = {i for i, comp in enumerate(full) if comp >> u & 1 or comp >> v & 1}
            if len(sides) == 2 and _is_clique_mask(h2.neighbors, sep):
                return False
    return True


# --- enumeration on one (prime or small) graph ---

def _elimination_fills(g: MixedGraph, non_edges: list[tuple[int, int]]) -> list[int]:
    """Inclusion-minimal fill sets over all elimination orderings.

    Eliminating v after the set S adds every missing pair among the vertices
    reachable from v through S, so the fill of an ordering prefix depends on
    the set S only. Each state keeps an antichain of fill bitmasks.
    """
    pair_bit = {pair: 1 << i for i, pair in enumerate(non_edges)}
    adj = g.neighbors
    vertices = g.vertices.mask

    def step_fill(eliminated: int, v: int) -> int:
        reach = reachable(adj, 1 << v, eliminated | 1 << v)
        around = sorted(bits(_neighborhood(adj, reach) & vertices & ~eliminated))
        fill = 0
        for x, y in combinations(around, 2):
            fill |= pair_bit.get((x, y), 0)
        return fill

    layer: dict[int, list[int]] = {0: [0]}
    for _ in range(popcount(vertices)):
        nxt: dict[int, list[int]] = {}
        for eliminated, fills in layer.items():
            for v in bits(vertices & ~eliminated):
                extra = step_fill(eliminated, v)
                state = eliminated | 1 << v
                bucket = nxt.setdefault(state, [])
                for f in fills:
                    bucket.append(f | extra)
        layer = {state: _antichain(fills) for state, fills in nxt.items()}
    return layer.get(vertices, [0])


def _antichain(masks) -> list[int]:
    """Inclusion-minimal members of masks."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (popcount(x), x)):
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return kept


def _fill_subset_fills(g: MixedGraph, non_edges: list[tuple[int, int]]) -> list[int]:
    """Staged search over fill subsets in increasing size."""
    if len(non_edges) > MAX_FILL_CANDIDATES:
        raise GuardExceededError("fill-subset candidate pairs", MAX_FILL_CANDIDATES, len(non_edges))
    found: list[int] = []
    for size in range(len(non_edges) + 1):
        for chosen in combinations(range(len(non_edges)), size):
            mask = sum(1 << i for i in chosen)
            if any(f & ~mask == 0 for f in found):
                continue
            pairs = [non_edges[i] for i in chosen]
            if not _chordal_with(g, pairs):
                continue
            if not is_minimal_triangulation(g, _with_fill(g, pairs)):
                raise InternalInvariantError(f"fill {pairs} passed the subset search but is not minimal")
            found.append(mask)
    return found


def minimal_triangulations_prime(
    g: MixedGraph,
    strategy: str = "elimination",
    max_vertices: int = MAX_PRIME_VERTICES,
    max_count: int = MAX_TRIANGULATIONS,
) -> list[MixedGraph]:
    """All minimal triangulations of g, sorted by fill encoding.

    Meant for one mp-component; any graph within the vertex guard is accepted.
    """
    require_undirected(g, "minimal_triangulations_prime")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if len(g.vertices) > max_vertices:
        raise GuardExceededError("prime component vertices", max_vertices, len(g.vertices))
    if is_chordal(g):
        return [g]
    non_edges = _non_edges(g)
    if strategy == "elimination":
        fills = _elimination_fills(g, non_edges)
    else:
        fills = _fill_subset_fills(g, non_edges)
    if len(fills) > max_count:
        raise GuardExceededError("minimal triangulations", max_count, len(fills))
    graphs = [_with_fill(g, [non_edges[i] for i in bits(f)]) for f in fills]
    logger.debug("%d minimal triangulations of %s (%s)", len(graphs), g.vertices, strategy)
    return _sorted_by_fill(graphs, g)


def brute_force_minimal_triangulations(g: MixedGraph, max_candidates: int = MAX_ORACLE_CANDIDATES) -> list[MixedGraph]:
    """Every fill subset, keep the chordal ones, keep the inclusion-minimal among those."""
    require_undirected(g, "brute_force_minimal_triangulations")
    non_edges = _non_edges(g)
    if len(non_edges) > max_candidates:
        raise GuardExceededError("oracle candidate pairs", max_candidates, len(non_edges))
    chordal = [
        mask for mask in range(1 << len(non_edges))
        if _chordal_with(g, [non_edges[i] for i in bits(mask)])
    ]
    minimal = [m for m in chordal if not any(o != m and o & ~m == 0 for o in chordal)]
    return _sorted_by_fill([_with_fill(g, [non_edges[i] for i in bits(m)]) for m in minimal], g)


# --- whole undirected graphs ---

@dataclass(frozen=True)
class ComponentTriangulations:
    component: VertexSet
    triangulations: tuple[MixedGraph, ...]


def component_triangulations(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
) -> list[ComponentTriangulations]:
    """Minimal triangulations of each mp-subgraph, in component order."""
    require_undirected(g, "component_triangulations")
    out = []
    for comp in mpd_decompose(g).components:
        sub = g.induced_subgraph(comp)
        out.append(ComponentTriangulations(comp, tuple(minimal_triangulations_prime(sub, strategy, max_count=max_count))))
    return out


def minimal_triangulations(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
    max_product: int = MAX_PRODUCT,
) -> list[MixedGraph]:
    """All minimal triangulations: one choice per mp-component, glued onto g."""
    require_undirected(g, "minimal_triangulations")
    parts = component_triangulations(g, strategy, max_count)
    counts = [len(p.triangulations) for p in parts]
    total = prod(counts)
    if total > max_product:
        raise GuardExceededError("triangulation product", max_product, total, counts)
    graphs = set()
    for choice in product(*(p.triangulations for p in parts)):
        pairs = set()
        for sub in choice:
            pairs |= sub.undirected
        graphs.add(_with_fill(g, pairs))
    return _sorted_by_fill(graphs, g)


def triangulation_count(g: MixedGraph, strategy: str = "elimination", max_count: int = MAX_TRIANGULATIONS) -> int:
    """|T(g)| without forming the product."""
    return prod(len(p.triangulations) for p in component_triangulations(g, strategy, max_count))


# --- separating triangulations ---

def separating_triangulation(g: MixedGraph, t: Triplet) -> MixedGraph:
    """A triangulation in which t still holds: A'C', B'C' and C'D' made complete."""
    require_undirected(g, "separating_triangulation")
    a, b, c = g.set_of(t.a).mask, g.set_of(t.b).mask, g.set_of(t.c).mask
    vertices = g.vertices.mask
    if not separated(g.neighbors, a, b, c, vertices):
        raise GraphClassError(f"{t} does not hold in the graph")
    a_side = reachable(g.neighbors, a, vertices & ~c)
    b_side = reachable(g.neighbors, b, vertices & ~c)
    d_side = vertices & ~(a_side | b_side | c)
    pairs = set(g.undirected)
    for block in (a_side | c, b_side | c, c | d_side):
        pairs.update(combinations(sorted(bits(block)), 2))
    return MixedGraph(g.vertices, frozenset(pairs))


def minimal_separating_triangulation(g: MixedGraph, t: Triplet) -> MixedGraph:
    """Drop fill edges of the separating triangulation while chordality survives."""
    h = separating_triangulation(g, t)
    removed = True
    while removed:
        removed = False
        for pair in sorted(h.undirected - g.undirected):
            candidate = MixedGraph(h.vertices, h.undirected - {pair})
            if is_chordal(candidate):
                h = candidate
                removed = True
                break
    return h


# --- chain graphs ---

def closure_graph(g: MixedGraph, c) -> MixedGraph:
    """Moral graph of the subgraph induced on C and its parents."""
    require_chain(g, "closure_graph")
    comp = g.set_of(c)
    if comp not in g.chain_components():
        raise NotChainComponentError(f"{comp} is not a chain component")
    return moral_graph(g.induced_subgraph(comp | g.parents(comp)))


def is_dag_equivalent(g: MixedGraph) -> bool:
    require_chain(g, "is_dag_equivalent")
    return all(is_chordal(closure_graph(g, comp)) for comp in g.chain_components())


@dataclass(frozen=True)
class ComponentDiagnostics:
    """Decomposability of one closure graph and the three component conditions behind it."""

    component: VertexSet
    closure_chordal: bool
    component_decomposable: bool
    children_separated: bool
    parents_separated: bool

    @property
    def conditions_hold(self) -> bool:
        return self.component_decomposable and self.children_separated and self.parents_separated


def dag_equivalence_diagnostics(g: MixedGraph) -> list[ComponentDiagnostics]:
    require_chain(g, "dag_equivalence_diagnostics")
    out = []
    nb = g.neighbors
    for comp in g.chain_components():
        cm = comp.mask
        h_c = g.induced_subgraph(comp)
        kids = {p: g.child_masks[p] & cm for p in bits(g.parents(comp).mask)}

        def holds(x, y, given):
            return not (nb[x] >> y & 1) and separated(nb, 1 << x, 1 << y, given, cm)

        children_ok = all(
            holds(x, y, ch & ~(1 << x | 1 << y))
            for ch in kids.values()
            for x, y in combinations(bits(ch), 2)
            if not (nb[x] >> y & 1)
        )
        parents_ok = all(
            holds(x, y, (kids[p] | kids[q]) & ~(1 << x | 1 << y))
            for p, q in combinations(sorted(kids), 2)
            for x in bits(kids[p] & ~kids[q])
            for y in bits(kids[q] & ~kids[p])
        )
        out.append(ComponentDiagnostics(
            comp,
            is_chordal(closure_graph(g, comp)),
            is_chordal(h_c),
            children_ok,
            parents_ok,
        ))
    return out


def cg_minimal_triangulations(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
    max_product: int = MAX_PRODUCT,
) -> list[MixedGraph]:
    """Minimal triangulations of a chain graph, one closure graph at a time.

    A fill edge inside a chain component stays undirected; one between
    components points from the earlier component to the later.
    """
    require_chain(g, "cg_minimal_triangulations")
    rank = g.component_rank
    options = []
    for comp in g.chain_components():
        closure = closure_graph(g, comp)
        fills = []
        for tri in minimal_triangulations(closure, strategy, max_count, max_product):
            und, dire = [], []
            for x, y in tri.edge_pairs() - closure.edge_pairs():
                if rank[x] == rank[y]:
                    und.append((x, y))
                elif rank[x] < rank[y]:
                    dire.append((x, y))
                else:
                    dire.append((y, x))
            fills.append((frozenset(und), frozenset(dire)))
        options.append(fills)
    counts = [len(o) for o in options]
    total = prod(counts)
    if total > max_product:
        raise GuardExceededError("chain graph triangulation product", max_product, total, counts)

    graphs = set()
    for choice in product(*options):
        und = frozenset().union(*(c[0] for c in choice))
        dire = frozenset().union(*(c[1] for c in choice))
        h = g.with_edges(und, dire)
        if not h.is_chain:
            raise InternalInvariantError(f"triangulated graph {h} is not a chain graph")
        graphs.add(h)
    if len(graphs) < total:
        logger.debug("%d duplicate chain graph triangulations dropped", total - len(graphs))
    return _sorted_by_fill(graphs, g)
