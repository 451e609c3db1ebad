"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Standard imsets of acyclic directed, decomposable, undirected and chain
graphs; imset-based CI and equivalence tests; feasible merging.
"""
import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional

from .errors import (
    GraphClassError,
    GuardExceededError,
    InternalInvariantError,
    NotChainComponentError,
    NotChordalError,
    NotMetaArrowError,
    OracleMismatchError,
    UniverseMismatchError,
)
from .graph_core import (
    MixedGraph,
    Triplet,
    VertexSet,
    all_triplets,
    bits,
    elementary_triplets,
    popcount,
    require_chain,
    require_same_vertices,
    require_undirected,
)
from .imset import (
    MAX_DECOMPOSE_VERTICES,
    Decomposition,
    Imset,
    combinatorial_decompose,
    is_combinatorial,
    semi_elementary,
)
from .mpd import MpDecomposition, is_chordal, mpd_decompose
from .separation import cg_separates, complexes
from .triangulate import (
    MAX_PRODUCT,
    MAX_TRIANGULATIONS,
    closure_graph,
    component_triangulations,
    is_dag_equivalent,
    minimal_triangulations,
)

logger = logging.getLogger(__name__)

VARIANTS = ("cg", "ug", "dag", "decomposable", "v")


class _Accumulator(dict):
    """mask -> coefficient, summed."""

    def add(self, mask: int, coef: int = 1):
        self[mask] = self.get(mask, 0) + coef

    def imset(self, universe) -> Imset:
        return Imset.from_dict(universe, self)


# --- constructions ---

def standard_imset_dag(g: MixedGraph) -> Imset:
    """δ_N - δ_∅ + Σ_i (δ_pa(i) - δ_{i ∪ pa(i)})."""
    if g.undirected or not g.is_dag:
        raise GraphClassError(f"standard_imset_dag needs an acyclic directed graph, got {g.classify().value}")
    acc = _Accumulator()
    acc.add(g.vertices.mask)
    acc.add(0, -1)
    for i in bits(g.vertices.mask):
        pa = g.parent_masks[i]
        acc.add(pa)
        acc.add(pa | 1 << i, -1)
    return acc.imset(g.universe)


def _decomposable_terms(acc: _Accumulator, vertices: int, d: MpDecomposition, sign: int = 1):
    acc.add(vertices, sign)
    for clique in d.components:
        acc.add(clique.mask, -sign)
    for sep, nu in d.separators.items():
        acc.add(sep.mask, sign * nu)


def standard_imset_decomposable(g: MixedGraph, d: Optional[MpDecomposition] = None) -> Imset:
    """δ_N - Σ_K δ_K + Σ_S ν(S)·δ_S over maximal cliques and separators."""
    require_undirected(g, "standard_imset_decomposable")
    if not is_chordal(g):
        raise NotChordalError("standard_imset_decomposable needs a chordal graph; use standard_imset_ug")
    acc = _Accumulator()
    _decomposable_terms(acc, g.vertices.mask, d or mpd_decompose(g))
    return acc.imset(g.universe)


def v_imset_ug(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
    max_product: int = MAX_PRODUCT,
) -> Imset:
    """Sum of the decomposable imsets of every minimal triangulation."""
    require_undirected(g, "v_imset_ug")
    acc = _Accumulator()
    for h in minimal_triangulations(g, strategy, max_count, max_product):
        _decomposable_terms(acc, h.vertices.mask, mpd_decompose(h))
    return acc.imset(g.universe)


def standard_imset_ug(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
) -> Imset:
    """Decomposable imset of the mp-completion plus, per mp-component,
    the decomposable imsets of all its minimal triangulations.

    Only per-component triangulation lists are formed, never their product.
    """
    require_undirected(g, "standard_imset_ug")
    d = mpd_decompose(g)
    acc = _Accumulator()
    _decomposable_terms(acc, g.vertices.mask, d)
    for part in component_triangulations(g, strategy, max_count):
        if g.is_clique(part.component):
            continue
        for h in part.triangulations:
            _decomposable_terms(acc, h.vertices.mask, mpd_decompose(h))
    return acc.imset(g.universe)


def standard_imset_cg(
    g: MixedGraph,
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
) -> Imset:
    """δ_N - δ_∅ + Σ_C (δ_pa(C) - δ_{C ∪ pa(C)} + u of the closure graph of C)."""
    require_chain(g, "standard_imset_cg")
    acc = _Accumulator()
    acc.add(g.vertices.mask)
    acc.add(0, -1)
    for comp in g.chain_components():
        pa = g.parents(comp).mask
        acc.add(pa)
        acc.add(pa | comp.mask, -1)
        for mask, coef in standard_imset_ug(closure_graph(g, comp), strategy, max_count).terms:
            acc.add(mask, coef)
    return acc.imset(g.universe)


def standard_imset_dag_equivalent(g: MixedGraph) -> Imset:
    """Closure-clique form for chain graphs whose closure graphs are all chordal."""
    require_chain(g, "standard_imset_dag_equivalent")
    if not is_dag_equivalent(g):
        raise NotChordalError("some closure graph is not chordal; use standard_imset_cg")
    acc = _Accumulator()
    acc.add(g.vertices.mask)
    acc.add(0, -1)
    for comp in g.chain_components():
        acc.add(g.parents(comp).mask)
        d = mpd_decompose(closure_graph(g, comp))
        for clique in d.components:
            acc.add(clique.mask, -1)
        for sep, nu in d.separators.items():
            acc.add(sep.mask, nu)
    return acc.imset(g.universe)


@dataclass(frozen=True)
class StandardImset:
    imset: Imset
    variant: str
    reduction: str


def standard_imset(
    g: MixedGraph,
    variant: str = "cg",
    strategy: str = "elimination",
    max_count: int = MAX_TRIANGULATIONS,
    max_product: int = MAX_PRODUCT,
) -> StandardImset:
    """Dispatch on variant; for the default "cg" report the specialisation that applies."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    if variant == "dag":
        return StandardImset(standard_imset_dag(g), variant, "dag")
    if variant == "decomposable":
        return StandardImset(standard_imset_decomposable(g), variant, "decomposable")
    if variant == "ug":
        return StandardImset(standard_imset_ug(g, strategy, max_count), variant, "ug")
    if variant == "v":
        return StandardImset(v_imset_ug(g, strategy, max_count, max_product), variant, "v")

    u = standard_imset_cg(g, strategy, max_count)
    kind = g.classify().value
    if kind == "UG":
        reduction = "ug (undirected graph: no parents, closures are the components)"
    elif kind == "DAG":
        reduction = "dag (acyclic directed graph: singleton components, complete closures)"
    elif is_dag_equivalent(g):
        reduction = "cg (every closure graph chordal: equivalent to an acyclic directed graph)"
    else:
        reduction = "cg (general chain graph)"
    return StandardImset(u, variant, reduction)


# --- CI and equivalence ---

def ci_test(u: Imset, t: Triplet, max_vertices: int = MAX_DECOMPOSE_VERTICES) -> bool:
    """t ∈ M_u for a standard imset u: u - u_t is combinatorial."""
    if u.universe != t.universe:
        raise UniverseMismatchError("triplet and imset come from different universes")
    return is_combinatorial(u - semi_elementary(t), max_vertices)


def ci_test_checked(g: MixedGraph, t: Triplet, u: Optional[Imset] = None) -> bool:
    """ci_test on the chain graph's standard imset, cross-checked against separation."""
    u = u if u is not None else standard_imset_cg(g)
    verdict = ci_test(u, t)
    oracle = cg_separates(g, t)
    if verdict != oracle:
        raise OracleMismatchError(f"imset says {verdict} but separation says {oracle} for {t} in {g}")
    return verdict


def imset_model(u: Imset, vertices: VertexSet, elementary_only: bool = False) -> tuple[Triplet, ...]:
    """{t : ci_test(u, t)} over the triplets of vertices, canonically sorted."""
    source = elementary_triplets(vertices) if elementary_only else all_triplets(vertices)
    model = [t for t in source if ci_test(u, t)]
    model.sort(key=Triplet.sort_key)
    return tuple(model)


def imset_equivalent(g: MixedGraph, h: MixedGraph) -> bool:
    require_chain(g, "imset_equivalent")
    require_chain(h, "imset_equivalent")
    require_same_vertices(g, h, "imset_equivalent")
    return standard_imset_cg(g) == standard_imset_cg(h)


# --- merging ---

@dataclass(frozen=True)
class MergeResult:
    upper: VertexSet
    lower: VertexSet
    feasible: bool
    graph: Optional[MixedGraph] = None
    failed_condition: Optional[str] = None
    message: str = ""


def feasible_merge(g: MixedGraph, upper, lower) -> MergeResult:
    """Merge the meta-arrow upper ⇉ lower when pa(L) ∩ U is a clique and
    every other parent of L is a parent of each vertex of that clique."""
    require_chain(g, "feasible_merge")
    u_set, l_set = g.set_of(upper), g.set_of(lower)
    components = g.chain_components()
    for side in (u_set, l_set):
        if side not in components:
            raise NotChainComponentError(f"{side} is not a chain component")
    crossing = [(x, y) for x, y in g.directed if u_set.mask >> x & 1 and l_set.mask >> y & 1]
    if not crossing:
        raise NotMetaArrowError(f"no directed edge from {u_set} to {l_set}")

    pa_l = g.parents(l_set).mask
    k = pa_l & u_set.mask
    k_set = VertexSet(g.universe, k)
    if not g.is_clique(k_set):
        return MergeResult(u_set, l_set, False, failed_condition="clique",
                           message=f"pa(L) ∩ U = {k_set} is not a clique")
    outside = pa_l & ~u_set.mask
    for b in bits(k):
        if outside & ~g.parent_masks[b]:
            return MergeResult(u_set, l_set, False, failed_condition="parents",
                               message=f"pa(L) \\ U = {VertexSet(g.universe, outside)} is not contained "
                                       f"in pa({g.universe.labels[b]})")

    merged = MixedGraph(
        g.vertices,
        g.undirected | frozenset(crossing),
        g.directed - frozenset(crossing),
    )
    if not merged.is_chain or complexes(merged) != complexes(g):
        raise InternalInvariantError(f"feasible merge of {u_set} ⇉ {l_set} changed the equivalence class")
    logger.debug("merged %s ⇉ %s", u_set, l_set)
    return MergeResult(u_set, l_set, True, merged)


def _meta_arrows(g: MixedGraph) -> list[tuple[VertexSet, VertexSet]]:
    components = g.chain_components()
    rank = g.component_rank
    pairs = sorted({(rank[x], rank[y]) for x, y in g.directed})
    return [(components[i], components[j]) for i, j in pairs]


def merge_sequence(g: MixedGraph) -> list[MergeResult]:
    """Feasible merges applied, in order, until none is left."""
    require_chain(g, "merge_sequence")
    steps = []
    current = g
    progress = True
    while progress:
        progress = False
        for upper, lower in _meta_arrows(current):
            result = feasible_merge(current, upper, lower)
            if result.feasible:
                steps.append(result)
                current = result.graph
                progress = True
                break
    return steps


def largest_equivalent(g: MixedGraph) -> MixedGraph:
    """The largest chain graph equivalent to g."""
    steps = merge_sequence(g)
    result = steps[-1].graph if steps else g
    logger.info("largest equivalent graph reached after %d merges", len(steps))
    return result


# --- orientations and degree ---

def perfect_elimination_dag(g: MixedGraph) -> MixedGraph:
    """Orient a chordal graph along a maximum cardinality search order.

    Earlier-numbered neighbours of every vertex form a clique, so the
    orientation has no immoralities.
    """
    require_undirected(g, "perfect_elimination_dag")
    if not is_chordal(g):
        raise NotChordalError("perfect_elimination_dag needs a chordal graph")
    nb = g.neighbors
    numbered = 0
    rank = {}
    remaining = g.vertices.mask
    while remaining:
        v = max(bits(remaining), key=lambda x: (popcount(nb[x] & numbered), -x))
        rank[v] = len(rank)
        numbered |= 1 << v
        remaining &= ~(1 << v)
    directed = frozenset((u, v) if rank[u] < rank[v] else (v, u) for u, v in g.undirected)
    return MixedGraph(g.vertices, frozenset(), directed)


@dataclass(frozen=True)
class DegreeSearchResult:
    imset: Imset
    decomposition: Decomposition
    candidates_checked: int

    @property
    def degree(self) -> int:
        return self.decomposition.degree


def smallest_degree_search(
    g: MixedGraph,
    max_degree: int,
    max_multiplier: int = 2,
    max_candidates: int = 200_000,
) -> Optional[DegreeSearchResult]:
    """Smallest-degree combination of the graph's elementary statements that
    induces the same elementary model, or None up to max_degree.

    Membership of t in M_w is tested as k·w - u_t combinatorial for some
    k <= max_multiplier, so the answer is a bounded, informational one.
    """
    require_chain(g, "smallest_degree_search")
    elementary = list(elementary_triplets(g.vertices))
    holds = {t: cg_separates(g, t) for t in elementary}
    pool = [t for t in elementary if holds[t]]
    positives = pool
    negatives = [t for t in elementary if not holds[t]]
    pairs_needed = {(t.a.mask, t.b.mask) for t in pool}
    if not pool:
        zero = Imset.zero(g.universe)
        return DegreeSearchResult(zero, Decomposition(()), 0)

    vectors = {t: semi_elementary(t) for t in pool}
    tests = {t: semi_elementary(t) for t in elementary}

    def in_model(w: Imset, t: Triplet) -> bool:
        return any(is_combinatorial(w.scale(k) - tests[t]) for k in range(1, max_multiplier + 1))

    checked = 0
    for size in range(len(pairs_needed), max_degree + 1):
        for choice in combinations_with_replacement(range(len(pool)), size):
            if {(pool[i].a.mask, pool[i].b.mask) for i in choice} != pairs_needed:
                continue
            checked += 1
            if checked > max_candidates:
                raise GuardExceededError("degree search candidates", max_candidates, checked)
            w = Imset.zero(g.universe)
            for i in choice:
                w = w + vectors[pool[i]]
            if all(in_model(w, t) for t in positives) and not any(in_model(w, t) for t in negatives):
                found = combinatorial_decompose(w)
                logger.info("smallest degree %d found after %d candidates", size, checked)
                return DegreeSearchResult(w, found, checked)
    return None
