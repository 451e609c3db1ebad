"""
ImsetMind - Imset Toolkit for Graphical Models
Vertex sets, triplets and mixed graphs.

Vertex sets are bitmasks over a sorted label table (the universe N), so
every derived object shares one canonical ordering and imset coordinates
are addressed by the integer encoding of a set.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

import networkx as nx

from .errors import (
    GraphClassError,
    GraphStructureError,
    GuardExceededError,
    InvalidTripletError,
    UniverseMismatchError,
    UnknownVertexError,
)

logger = logging.getLogger(__name__)

MAX_UNIVERSE = 32


# --- bitmask helpers ---

def bits(mask: int) -> Iterator[int]:
    """Yield the indices set in mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def submasks(mask: int) -> Iterator[int]:
    """All subsets of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def reachable(adjacency, start: int, allowed: int) -> int:
    """Vertices of allowed reachable from start (start included) inside allowed."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adjacency[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components_within(adjacency, allowed: int) -> list[int]:
    """Connected components of the subgraph induced on allowed."""
    out = []
    rest = allowed
    while rest:
        comp = reachable(adjacency, rest & -rest, allowed)
        out.append(comp)
        rest &= ~comp
    return out


# --- universe and vertex sets ---

@dataclass(frozen=True)
class Universe:
    """The labelled variable set N; labels are kept sorted."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise GraphStructureError(f"duplicate labels in universe: {self.labels}")
        if list(self.labels) != sorted(self.labels):
            raise GraphStructureError("universe labels must be sorted; use Universe.from_labels")
        if len(self.labels) > MAX_UNIVERSE:
            raise GuardExceededError("universe size", MAX_UNIVERSE, len(self.labels))

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "Universe":
        return cls(tuple(sorted(set(labels))))

    def __len__(self):
        return len(self.labels)

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask_of(self, labels: Iterable[str]) -> int:
        if isinstance(labels, str):
            labels = [labels]
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self.index[label]
            except KeyError:
                raise UnknownVertexError(f"unknown vertex {label!r}") from None
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def vertex_set(self, labels: Iterable[str] = ()) -> "VertexSet":
        return VertexSet(self, self.mask_of(labels))

    def from_mask(self, mask: int) -> "VertexSet":
        return VertexSet(self, mask)

    def full(self) -> "VertexSet":
        return VertexSet(self, self.full_mask)

    def empty(self) -> "VertexSet":
        return VertexSet(self, 0)


@dataclass(frozen=True)
class VertexSet:
    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.universe.full_mask:
            raise UnknownVertexError(f"mask {self.mask:#x} is outside the universe {self.universe.labels}")

    def _same(self, other: "VertexSet") -> int:
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.universe != self.universe:
            raise UniverseMismatchError("vertex sets over different universes")
        return other.mask

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self):
        return popcount(self.mask)

    def __bool__(self):
        return self.mask != 0

    def __contains__(self, label: str):
        i = self.universe.index.get(label)
        return i is not None and bool(self.mask >> i & 1)

    def __or__(self, other):
        return VertexSet(self.universe, self.mask | self._same(other))

    def __and__(self, other):
        return VertexSet(self.universe, self.mask & self._same(other))

    def __sub__(self, other):
        return VertexSet(self.universe, self.mask & ~self._same(other))

    def complement(self) -> "VertexSet":
        return VertexSet(self.universe, self.universe.full_mask & ~self.mask)

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~self._same(other) == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & self._same(other) == 0

    @property
    def labels(self) -> tuple[str, ...]:
        return self.universe.labels_of(self.mask)

    def indices(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def text(self) -> str:
        return ",".join(self.labels)

    def __str__(self):
        return "{" + self.text() + "}"

    def __repr__(self):
        return f"VertexSet({self})"


# --- triplets ---

@dataclass(frozen=True)
class Triplet:
    """A disjoint triple <A,B|C>, read as 'A independent of B given C'."""

    a: VertexSet
    b: VertexSet
    c: VertexSet

    def __post_init__(self):
        universe = self.a.universe
        if self.b.universe != universe or self.c.universe != universe:
            raise UniverseMismatchError("triplet members come from different universes")
        if not self.a or not self.b:
            raise InvalidTripletError("A and B must be nonempty")
        if self.a.mask & self.b.mask or self.a.mask & self.c.mask or self.b.mask & self.c.mask:
            raise InvalidTripletError(f"triplet sets are not disjoint: {self.a} {self.b} {self.c}")

    @classmethod
    def from_labels(cls, universe: Universe, a, b, c=()) -> "Triplet":
        return cls(universe.vertex_set(a), universe.vertex_set(b), universe.vertex_set(c))

    @classmethod
    def from_masks(cls, universe: Universe, a: int, b: int, c: int = 0) -> "Triplet":
        return cls(VertexSet(universe, a), VertexSet(universe, b), VertexSet(universe, c))

    @property
    def universe(self) -> Universe:
        return self.a.universe

    @property
    def is_elementary(self) -> bool:
        return len(self.a) == 1 and len(self.b) == 1

    @property
    def span(self) -> VertexSet:
        return self.a | self.b | self.c

    def canonical(self) -> "Triplet":
        if self.a.mask > self.b.mask:
            return Triplet(self.b, self.a, self.c)
        return self

    def sort_key(self):
        t = self.canonical()
        return (t.c.mask, t.a.mask, t.b.mask)

    def __str__(self):
        return f"{self.a.text()}|{self.b.text()}|{self.c.text()}"


def all_triplets(vertices: VertexSet) -> Iterator[Triplet]:
    """Every canonical triplet of T(V): one per unordered {A, B}."""
    universe, full = vertices.universe, vertices.mask
    for a in submasks(full):
        if not a:
            continue
        rest = full & ~a
        for b in submasks(rest):
            if not b or b < a:
                continue
            for c in submasks(rest & ~b):
                yield Triplet.from_masks(universe, a, b, c)


def elementary_triplets(vertices: VertexSet) -> Iterator[Triplet]:
    universe, full = vertices.universe, vertices.mask
    members = list(bits(full))
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            rest = full & ~(1 << x | 1 << y)
            for c in sorted(submasks(rest)):
                yield Triplet.from_masks(universe, 1 << x, 1 << y, c)


# --- mixed graphs ---

class GraphClass(str, enum.Enum):
    UG = "UG"
    DAG = "DAG"
    CG = "CG-proper"
    NOT_CG = "NOT-CG"


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MixedGraph:
    """A simple graph with undirected and directed edges over a vertex set.

    Edges are stored as index pairs into the universe; undirected pairs are
    normalised so the smaller index comes first.
    """

    vertices: VertexSet
    undirected: frozenset = frozenset()
    directed: frozenset = frozenset()

    def __post_init__(self):
        undirected = frozenset(_pair(u, v) for u, v in self.undirected)
        directed = frozenset((u, v) for u, v in self.directed)
        object.__setattr__(self, "undirected", undirected)
        object.__setattr__(self, "directed", directed)
        for u, v in undirected | directed:
            if u == v:
                raise GraphStructureError(f"self-loop at {self.universe.labels[u]}")
            for w in (u, v):
                if not (self.vertices.mask >> w & 1):
                    raise UnknownVertexError(f"edge endpoint {w} is not a vertex of the graph")
        for u, v in directed:
            if (v, u) in directed:
                raise GraphStructureError(f"both {self._name(u)}->{self._name(v)} and the reverse are present")
            if _pair(u, v) in undirected:
                raise GraphStructureError(f"{self._name(u)},{self._name(v)} is both directed and undirected")

    @classmethod
    def from_labels(cls, labels, undirected=(), directed=(), universe: Optional[Universe] = None) -> "MixedGraph":
        universe = universe or Universe.from_labels(labels)
        idx = universe.index
        try:
            und = [(idx[a], idx[b]) for a, b in undirected]
            dire = [(idx[a], idx[b]) for a, b in directed]
        except KeyError as e:
            raise UnknownVertexError(f"unknown vertex {e.args[0]!r}") from None
        return cls(universe.vertex_set(labels), frozenset(und), frozenset(dire))

    def _name(self, i: int) -> str:
        return self.universe.labels[i]

    @property
    def universe(self) -> Universe:
        return self.vertices.universe

    # adjacency as per-vertex masks, indexed by universe position

    @cached_property
    def neighbors(self) -> tuple[int, ...]:
        adj = [0] * len(self.universe)
        for u, v in self.undirected:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def parent_masks(self) -> tuple[int, ...]:
        pa = [0] * len(self.universe)
        for u, v in self.directed:
            pa[v] |= 1 << u
        return tuple(pa)

    @cached_property
    def child_masks(self) -> tuple[int, ...]:
        ch = [0] * len(self.universe)
        for u, v in self.directed:
            ch[u] |= 1 << v
        return tuple(ch)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        return tuple(n | p | c for n, p, c in zip(self.neighbors, self.parent_masks, self.child_masks))

    def set_of(self, vs) -> VertexSet:
        """Coerce labels or a VertexSet into a subset of this graph's vertices."""
        if not isinstance(vs, VertexSet):
            vs = self.universe.vertex_set(vs)
        elif vs.universe != self.universe:
            raise UniverseMismatchError("vertex set comes from another universe")
        if vs.mask & ~self.vertices.mask:
            raise UnknownVertexError(f"{vs} is not a subset of the graph's vertices {self.vertices}")
        return vs

    # adjacency predicates

    def vertex_index(self, label: str) -> int:
        return lowest(self.set_of([label]).mask)

    def adjacent(self, a: str, b: str) -> bool:
        i, j = self.vertex_index(a), self.vertex_index(b)
        return bool(self.adjacency[i] >> j & 1)

    def has_undirected(self, a: str, b: str) -> bool:
        return _pair(self.vertex_index(a), self.vertex_index(b)) in self.undirected

    def has_directed(self, a: str, b: str) -> bool:
        return (self.vertex_index(a), self.vertex_index(b)) in self.directed

    # classification

    @cached_property
    def _chain_order(self) -> Optional[tuple[int, ...]]:
        """Ordered chain component masks, or None when the graph is not a chain graph."""
        skeleton = nx.Graph()
        skeleton.add_nodes_from(bits(self.vertices.mask))
        skeleton.add_edges_from(self.undirected)
        comps = [sum(1 << v for v in comp) for comp in nx.connected_components(skeleton)]
        owner = {v: ci for ci, comp in enumerate(comps) for v in bits(comp)}
        meta = nx.DiGraph()
        meta.add_nodes_from(range(len(comps)))
        meta.add_edges_from((owner[u], owner[v]) for u, v in self.directed)
        if not nx.is_directed_acyclic_graph(meta):
            return None
        order = nx.lexicographical_topological_sort(meta, key=lambda ci: lowest(comps[ci]))
        return tuple(comps[ci] for ci in order)

    @property
    def is_undirected(self) -> bool:
        return not self.directed

    @property
    def is_chain(self) -> bool:
        return self._chain_order is not None

    @property
    def is_dag(self) -> bool:
        return not self.undirected and self.is_chain

    def classify(self) -> GraphClass:
        if not self.directed:
            return GraphClass.UG
        if not self.is_chain:
            return GraphClass.NOT_CG
        if not self.undirected:
            return GraphClass.DAG
        return GraphClass.CG

    def chain_components(self) -> list[VertexSet]:
        require_chain(self, "chain_components")
        return [VertexSet(self.universe, m) for m in self._chain_order]

    @cached_property
    def component_rank(self) -> dict[int, int]:
        """Vertex index -> position of its chain component."""
        require_chain(self, "component_rank")
        return {v: r for r, comp in enumerate(self._chain_order) for v in bits(comp)}

    # structural queries

    def parents(self, vs) -> VertexSet:
        m = self.set_of(vs).mask
        pa = 0
        for v in bits(m):
            pa |= self.parent_masks[v]
        return VertexSet(self.universe, pa & ~m)

    def children(self, vs) -> VertexSet:
        m = self.set_of(vs).mask
        ch = 0
        for v in bits(m):
            ch |= self.child_masks[v]
        return VertexSet(self.universe, ch & ~m)

    def ancestral_set(self, vs) -> VertexSet:
        m = self.set_of(vs).mask
        pred = [n | p for n, p in zip(self.neighbors, self.parent_masks)]
        return VertexSet(self.universe, reachable(pred, m, self.vertices.mask))

    def induced_subgraph(self, vs) -> "MixedGraph":
        m = self.set_of(vs).mask

        def inside(e):
            return m >> e[0] & 1 and m >> e[1] & 1

        return MixedGraph(
            VertexSet(self.universe, m),
            frozenset(filter(inside, self.undirected)),
            frozenset(filter(inside, self.directed)),
        )

    def underlying(self) -> "MixedGraph":
        return MixedGraph(self.vertices, self.undirected | {_pair(u, v) for u, v in self.directed})

    def is_clique(self, vs) -> bool:
        m = self.set_of(vs).mask
        return all((self.adjacency[v] | 1 << v) & m == m for v in bits(m))

    def with_edges(self, undirected=(), directed=()) -> "MixedGraph":
        return MixedGraph(self.vertices, self.undirected | frozenset(undirected), self.directed | frozenset(directed))

    def edge_pairs(self) -> frozenset:
        """Unordered pairs of the underlying graph."""
        return self.undirected | frozenset(_pair(u, v) for u, v in self.directed)

    def fill_pairs(self, base: "MixedGraph") -> tuple[tuple[int, int], ...]:
        """Pairs adjacent here but not in base, sorted."""
        return tuple(sorted(self.edge_pairs() - base.edge_pairs()))

    def to_networkx(self) -> nx.Graph:
        """Underlying graph with universe indices as nodes."""
        graph = nx.Graph()
        graph.add_nodes_from(bits(self.vertices.mask))
        graph.add_edges_from(self.edge_pairs())
        return graph

    def __str__(self):
        names = self.universe.labels
        parts = [f"{names[u]}--{names[v]}" for u, v in sorted(self.undirected)]
        parts += [f"{names[u]}->{names[v]}" for u, v in sorted(self.directed)]
        return f"MixedGraph({self.vertices}; {', '.join(parts)})"


def require_undirected(g: MixedGraph, op: str):
    if not g.is_undirected:
        raise GraphClassError(f"{op} needs an undirected graph, got {g.classify().value}")


def require_chain(g: MixedGraph, op: str):
    if not g.is_chain:
        raise GraphClassError(f"{op} needs a chain graph, got {GraphClass.NOT_CG.value}")


def require_same_vertices(g: MixedGraph, h: MixedGraph, op: str):
    if g.vertices != h.vertices:
        raise UniverseMismatchError(f"{op}: graphs have different vertex sets {g.vertices} and {h.vertices}")
