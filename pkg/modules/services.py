"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Front-end services: graph text in, status dict out.

Every function returns {"status": "success", ...} or
{"status": "error", "error_message": ...} and never raises for bad input,
so Dash callbacks only have to branch on the status.
"""
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

from .config import RunConfig
from .errors import GuardExceededError, ImsetMindError
from .graph_core import MixedGraph
from .graph_parser import format_graph, graph_stats, parse_graph_text, parse_triplet, parse_vertex_set
from .heatmap import imset_heatmap, imset_table, model_heatmap
from .imset import combinatorial_decompose, degree_functional, level_counts
from .mpd import mpd_decompose
from .separation import cg_separates, complexes, frydenberg_equivalent, independence_model
from .standard import ci_test, feasible_merge, imset_equivalent, merge_sequence, standard_imset, standard_imset_cg
from .triangulate import cg_minimal_triangulations, dag_equivalence_diagnostics, minimal_triangulations

logger = logging.getLogger(__name__)


def _error(e: Exception) -> dict:
    if isinstance(e, GuardExceededError):
        return {"status": "error", "error_message": f"Guard exceeded: {e}", "guard": True}
    return {"status": "error", "error_message": str(e)}


def _load(text: str, config: RunConfig) -> MixedGraph:
    if not text or not text.strip():
        raise ImsetMindError("Please enter a graph.")
    g = parse_graph_text(text)
    if len(g.vertices) > config.max_universe:
        raise GuardExceededError("graph vertices", config.max_universe, len(g.vertices))
    return g


def _edge_rows(g: MixedGraph) -> list[dict]:
    names = g.universe.labels
    rows = [{"from": names[u], "kind": "--", "to": names[v]} for u, v in sorted(g.undirected)]
    rows += [{"from": names[u], "kind": "->", "to": names[v]} for u, v in sorted(g.directed)]
    return rows


def summarize_graph(text: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        result = {"status": "success", "stats": graph_stats(g), "edges": _edge_rows(g)}
        if g.is_chain:
            result["components"] = [str(c) for c in g.chain_components()]
            result["complexes"] = sorted(str(k) for k in complexes(g))
            result["closures"] = [
                {
                    "component": str(d.component),
                    "closure chordal": d.closure_chordal,
                    "component chordal": d.component_decomposable,
                    "children separated": d.children_separated,
                    "parents separated": d.parents_separated,
                }
                for d in dag_equivalence_diagnostics(g)
            ]
        return result
    except ImsetMindError as e:
        return _error(e)


def decompose_graph(text: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        d = mpd_decompose(_load(text, config))
        return {
            "status": "success",
            "components": [{"position": i, "component": str(c)} for i, c in enumerate(d.order, start=1)],
            "separators": [{"separator": str(s), "multiplicity": nu} for s, nu in d.separators.items()],
        }
    except ImsetMindError as e:
        return _error(e)


def triangulate_graph(text: str, strategy: str = "elimination", config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        if g.is_undirected:
            graphs = minimal_triangulations(g, strategy, config.max_triangulations, config.max_product)
        else:
            graphs = cg_minimal_triangulations(g, strategy, config.max_triangulations, config.max_product)
        names = g.universe.labels
        rows = []
        for i, h in enumerate(graphs, start=1):
            fill = h.fill_pairs(g)
            rows.append({
                "triangulation": i,
                "fill edges": ", ".join(f"{names[u]}-{names[v]}" for u, v in fill) or "(none)",
                "size": len(fill),
            })
        return {"status": "success", "count": len(graphs), "triangulations": rows}
    except (ImsetMindError, ValueError) as e:
        return _error(e)


def compute_standard_imset(
    text: str,
    variant: str = "cg",
    strategy: str = "elimination",
    config: Optional[RunConfig] = None,
) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        result = standard_imset(g, variant, strategy, config.max_triangulations, config.max_product)
        u = result.imset
        return {
            "status": "success",
            "imset": u,
            "reduction": result.reduction,
            "degree": str(degree_functional(u)),
            "levels": level_counts(u),
            "table": imset_table(u),
            "figure": imset_heatmap(u, title=f"Standard imset ({result.variant})"),
            "text": u.to_text(),
        }
    except (ImsetMindError, ValueError) as e:
        return _error(e)


def decompose_imset(u) -> dict:
    try:
        found = combinatorial_decompose(u)
    except ImsetMindError as e:
        return _error(e)
    if found is None:
        return {"status": "success", "combinatorial": False}
    return {"status": "success", "combinatorial": True, "degree": found.degree, "terms": [str(t) for t in found.terms]}


def save_imset_text(text: str, results_dir, stem: str = "imset") -> dict:
    """Write under results_dir with a timestamped name; the file name is what /download serves."""
    try:
        folder = Path(results_dir)
        folder.mkdir(parents=True, exist_ok=True)
        name = f"{stem}_{datetime.now().strftime('%Y%m%d_%H%M%S_%f')}.txt"
        (folder / name).write_text(text, encoding="utf-8")
        return {"status": "success", "filename": name}
    except OSError as e:
        return _error(e)


def run_ci_test(text: str, triplet: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        t = parse_triplet(g.universe, triplet or "")
        verdict = ci_test(standard_imset_cg(g, max_count=config.max_triangulations), t)
        return {"status": "success", "triplet": str(t), "independent": verdict, "separation": cg_separates(g, t)}
    except ImsetMindError as e:
        return _error(e)


def compare_graphs(first: str, second: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g, h = _load(first, config), _load(second, config)
        return {
            "status": "success",
            "imset": imset_equivalent(g, h),
            "frydenberg": frydenberg_equivalent(g, h),
        }
    except ImsetMindError as e:
        return _error(e)


def merge_components(text: str, upper: str, lower: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        result = feasible_merge(g, parse_vertex_set(g.universe, upper or ""), parse_vertex_set(g.universe, lower or ""))
        out = {"status": "success", "feasible": result.feasible, "message": result.message}
        if result.feasible:
            out["graph"] = format_graph(result.graph)
        return out
    except ImsetMindError as e:
        return _error(e)


def largest_chain_graph(text: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        steps = merge_sequence(g)
        final = steps[-1].graph if steps else g
        return {
            "status": "success",
            "merges": [f"{s.upper} => {s.lower}" for s in steps],
            "graph": format_graph(final),
        }
    except ImsetMindError as e:
        return _error(e)


def model_overview(text: str, config: Optional[RunConfig] = None) -> dict:
    config = config or RunConfig()
    try:
        g = _load(text, config)
        model = [t for t in independence_model(g) if t.is_elementary]
        return {
            "status": "success",
            "statements": [str(t) for t in model],
            "figure": model_heatmap(model, g.vertices),
        }
    except ImsetMindError as e:
        return _error(e)
