"""
ImsetMind Modules
-----------------
Core imports for the ImsetMind imset toolkit.
License: GNU GPL v3
"""

# Core functions
from .graph_core import MixedGraph, Triplet, Universe, VertexSet
from .graph_parser import format_graph, parse_graph, parse_graph_blocks, parse_triplet, parse_vertex_set
from .imset import Imset, combinatorial_decompose, degree, parse_imset, semi_elementary
from .mpd import mpd_decompose, mp_completion
from .separation import cg_separates, frydenberg_equivalent, independence_model
from .standard import (
    ci_test,
    feasible_merge,
    imset_equivalent,
    largest_equivalent,
    standard_imset,
    standard_imset_cg,
    standard_imset_dag,
    standard_imset_decomposable,
    standard_imset_ug,
)
from .triangulate import cg_minimal_triangulations, is_minimal_triangulation, minimal_triangulations

__all__ = [
    "MixedGraph",
    "Triplet",
    "Universe",
    "VertexSet",
    "format_graph",
    "parse_graph",
    "parse_graph_blocks",
    "parse_triplet",
    "parse_vertex_set",
    "Imset",
    "combinatorial_decompose",
    "degree",
    "parse_imset",
    "semi_elementary",
    "mpd_decompose",
    "mp_completion",
    "cg_separates",
    "frydenberg_equivalent",
    "independence_model",
    "ci_test",
    "feasible_merge",
    "imset_equivalent",
    "largest_equivalent",
    "standard_imset",
    "standard_imset_cg",
    "standard_imset_dag",
    "standard_imset_decomposable",
    "standard_imset_ug",
    "cg_minimal_triangulations",
    "is_minimal_triangulation",
    "minimal_triangulations",
]
