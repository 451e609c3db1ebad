"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Seeded random graphs and exhaustive enumerators for cross-checks.
"""
import logging
import string
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .graph_core import MixedGraph, Universe

logger = logging.getLogger(__name__)


def labels_for(n: int) -> list[str]:
    if n <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:n])
    return [f"v{i:02d}" for i in range(n)]


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_ug(n: int, p: float = 0.5, seed=None) -> MixedGraph:
    rng = _rng(seed)
    universe = Universe.from_labels(labels_for(n))
    pairs = frozenset(pair for pair in combinations(range(n), 2) if rng.random() < p)
    return MixedGraph(universe.full(), pairs)


def random_dag(n: int, p: float = 0.5, seed=None) -> MixedGraph:
    rng = _rng(seed)
    universe = Universe.from_labels(labels_for(n))
    order = rng.permutation(n)
    arrows = frozenset(
        (int(order[i]), int(order[j])) for i, j in combinations(range(n), 2) if rng.random() < p
    )
    return MixedGraph(universe.full(), frozenset(), arrows)


def random_cg(n: int, p: float = 0.5, seed=None) -> MixedGraph:
    """Random chain graph: a shuffled vertex order cut into blocks, lines
    inside blocks and arrows from earlier to later blocks."""
    rng = _rng(seed)
    universe = Universe.from_labels(labels_for(n))
    order = [int(v) for v in rng.permutation(n)]
    cuts = []
    if n > 1:
        how_many = int(rng.integers(0, n))
        cuts = sorted(int(c) for c in rng.choice(np.arange(1, n), size=how_many, replace=False))
    block = {}
    start = 0
    for b, end in enumerate(cuts + [n]):
        for v in order[start:end]:
            block[v] = b
        start = end
    undirected, directed = set(), set()
    for u, v in combinations(range(n), 2):
        if rng.random() >= p:
            continue
        if block[u] == block[v]:
            undirected.add((u, v))
        elif block[u] < block[v]:
            directed.add((u, v))
        else:
            directed.add((v, u))
    return MixedGraph(universe.full(), frozenset(undirected), frozenset(directed))


def random_graph(kind: str, n: int, p: float = 0.5, seed=None) -> MixedGraph:
    makers = {"ug": random_ug, "dag": random_dag, "cg": random_cg}
    try:
        return makers[kind](n, p, seed)
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {sorted(makers)}") from None


def all_undirected_graphs(n: int) -> Iterator[MixedGraph]:
    universe = Universe.from_labels(labels_for(n))
    pairs = list(combinations(range(n), 2))
    for keep in product((False, True), repeat=len(pairs)):
        yield MixedGraph(universe.full(), frozenset(p for p, k in zip(pairs, keep) if k))


def all_chain_graphs(n: int) -> Iterator[MixedGraph]:
    """Every labelled chain graph on n vertices (none, line or either arrow per pair)."""
    universe = Universe.from_labels(labels_for(n))
    pairs = list(combinations(range(n), 2))
    for kinds in product(range(4), repeat=len(pairs)):
        und = frozenset(p for p, k in zip(pairs, kinds) if k == 1)
        fwd = {p for p, k in zip(pairs, kinds) if k == 2}
        back = {(v, u) for (u, v), k in zip(pairs, kinds) if k == 3}
        g = MixedGraph(universe.full(), und, frozenset(fwd | back))
        if g.is_chain:
            yield g
