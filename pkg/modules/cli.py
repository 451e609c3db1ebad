"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Command-line entry point.

Exit status: 0 success, 1 negative verdict, 2 usage or input error,
3 guard exceeded or coefficient overflow, 4 internal invariant violation.

Text output keeps the graph and imset formats parseable: facts are
written as '# key: value' comment lines, and each body follows a
'# --- name ---' marker, so graph_parser.parse_graph_blocks reads a
multi-graph answer such as 'triangulate --all' back.
"""
import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import LOG_LEVELS, OUTPUT_MODES, RunConfig
from .errors import (
    ConfigError,
    GuardExceededError,
    ImsetMindError,
    ImsetOverflowError,
    InternalInvariantError,
    OracleMismatchError,
)
from .graph_core import MixedGraph
from .graph_parser import BLOCK_MARKER, format_graph, graph_stats, parse_graph, parse_triplet, parse_vertex_set
from .imset import combinatorial_decompose, degree_functional, parse_imset, semi_elementary
from .mpd import mpd_decompose
from .sampling import random_graph
from .separation import cg_separates, frydenberg_equivalent, independence_model
from .standard import (
    VARIANTS,
    ci_test,
    feasible_merge,
    imset_equivalent,
    imset_model,
    merge_sequence,
    standard_imset,
    standard_imset_cg,
    standard_imset_ug,
)
from .triangulate import STRATEGIES, cg_minimal_triangulations, minimal_triangulations, triangulation_count

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_GUARD, EXIT_INVARIANT = range(5)


@dataclass
class Report:
    """Facts (key, value) and bodies (name, text) of one command."""

    facts: list = field(default_factory=list)
    blocks: list = field(default_factory=list)
    status: int = EXIT_OK

    def fact(self, key, value):
        self.facts.append((key, value))
        return self

    def block(self, name, text):
        self.blocks.append((name, text))
        return self

    def render(self, mode: str) -> str:
        out = []
        if mode == "kv":
            out += [f"{k}={v}" for k, v in self.facts]
            for name, text in self.blocks:
                out += [f"{name}={line}" for line in text.splitlines()]
        else:
            out += [f"# {k}: {v}" for k, v in self.facts]
            for name, text in self.blocks:
                out.append(f"{BLOCK_MARKER}{name} ---")
                out += text.splitlines()
        return "\n".join(out) + "\n"


# --- helpers ---

def _load_graph(path: str, config: RunConfig) -> MixedGraph:
    g = parse_graph(path)
    if len(g.vertices) > config.max_universe:
        raise GuardExceededError("graph vertices", config.max_universe, len(g.vertices))
    return g


# --- commands ---

def cmd_decompose(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    d = mpd_decompose(g)
    report = Report()
    report.fact("components", " ".join(str(c) for c in d.components))
    report.fact("separators", " ".join(f"{s}:{nu}" for s, nu in d.separators.items()) or "none")
    report.fact("order", " ".join(str(c) for c in d.order))
    return report


def cmd_triangulate(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    report = Report()
    if g.is_undirected:
        if args.count:
            return report.fact("count", triangulation_count(g, args.strategy, config.max_triangulations))
        graphs = minimal_triangulations(g, args.strategy, config.max_triangulations, config.max_product)
    else:
        graphs = cg_minimal_triangulations(g, args.strategy, config.max_triangulations, config.max_product)
        if args.count:
            return report.fact("count", len(graphs))
    report.fact("count", len(graphs))
    shown = graphs if args.all else graphs[:1]
    for i, h in enumerate(shown, start=1):
        report.block(f"triangulation {i}", format_graph(h))
    return report


def cmd_standard_imset(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    result = standard_imset(g, args.variant, args.strategy, config.max_triangulations, config.max_product)
    report = Report()
    report.fact("variant", result.variant)
    report.fact("reduction", result.reduction)
    report.fact("degree", degree_functional(result.imset))
    return report.block("imset", result.imset.to_text())


def cmd_imset_show(args, config: RunConfig) -> Report:
    with open(args.file, encoding="utf-8") as fh:
        u = parse_imset(fh.read())
    report = Report()
    if args.degree:
        found = combinatorial_decompose(u)
        if found is None:
            report.status = EXIT_NEGATIVE
            return report.fact("combinatorial", False)
        return report.fact("degree", found.degree)
    report.fact("terms", len(u))
    report.fact("linear_screens", u.passes_linear_screens())
    return report.block("imset", u.to_text())


def cmd_imset_semi(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    t = parse_triplet(g.universe, args.triplet)
    return Report().fact("triplet", t).block("imset", semi_elementary(t).to_text())


def cmd_ci_test(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    t = parse_triplet(g.universe, args.triplet)
    verdict = ci_test(standard_imset_cg(g, args.strategy, config.max_triangulations), t)
    report = Report().fact("triplet", t).fact("independent", verdict)
    if args.oracle:
        oracle = cg_separates(g, t)
        report.fact("oracle", oracle)
        if oracle != verdict:
            raise OracleMismatchError(f"imset verdict {verdict} disagrees with separation {oracle} for {t}")
    report.status = EXIT_OK if verdict else EXIT_NEGATIVE
    return report


def cmd_equiv(args, config: RunConfig) -> Report:
    if len(args.graph) != 2:
        raise ConfigError("equiv needs exactly two --graph options")
    g, h = (_load_graph(p, config) for p in args.graph)
    same = imset_equivalent(g, h) if args.method == "imset" else frydenberg_equivalent(g, h)
    report = Report().fact("method", args.method).fact("verdict", "equivalent" if same else "not equivalent")
    report.status = EXIT_OK if same else EXIT_NEGATIVE
    return report


def cmd_merge(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    result = feasible_merge(g, parse_vertex_set(g.universe, args.upper), parse_vertex_set(g.universe, args.lower))
    report = Report().fact("feasible", result.feasible)
    if not result.feasible:
        report.fact("failed_condition", result.failed_condition).fact("reason", result.message)
        report.status = EXIT_NEGATIVE
        return report
    return report.block("graph", format_graph(result.graph))


def cmd_largest(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    steps = merge_sequence(g)
    report = Report().fact("merges", len(steps))
    for i, step in enumerate(steps, start=1):
        report.fact(f"merge_{i}", f"{step.upper} => {step.lower}")
    final = steps[-1].graph if steps else g
    return report.block("graph", format_graph(final))


def cmd_model(args, config: RunConfig) -> Report:
    g = _load_graph(args.graph, config)
    model = independence_model(g)
    if args.elementary:
        model = tuple(t for t in model if t.is_elementary)
    report = Report()
    for key, value in graph_stats(g).items():
        report.fact(key, value)
    report.fact("statements", len(model))
    return report.block("model", "\n".join(str(t) for t in model))


def cmd_crosscheck(args, config: RunConfig) -> Report:
    seed = args.seed if args.seed is not None else config.seed
    rng = np.random.default_rng(seed)
    mismatches = 0
    for i in range(args.samples):
        g = random_graph(args.kind, args.vertices, args.density, rng)
        u = standard_imset_ug(g) if args.kind == "ug" else standard_imset_cg(g)
        if imset_model(u, g.vertices) != independence_model(g):
            mismatches += 1
            logger.warning("model mismatch on sample %d: %s", i, g)
    report = Report().fact("kind", args.kind).fact("vertices", args.vertices)
    report.fact("samples", args.samples).fact("seed", seed).fact("mismatches", mismatches)
    if mismatches:
        raise OracleMismatchError(f"{mismatches} of {args.samples} sampled graphs disagree with separation")
    return report


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imsetmind", description="Standard imsets of graphical models.")
    parser.add_argument("--output", choices=OUTPUT_MODES, help="text (default) or kv")
    parser.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper)
    parser.add_argument("--max-universe", type=int)
    parser.add_argument("--max-triangulations", type=int)
    parser.add_argument("--max-product", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_graph(p):
        p.add_argument("--graph", required=True, help="graph file")
        return p

    def with_strategy(p):
        p.add_argument("--strategy", choices=STRATEGIES, default="elimination")
        return p

    p = with_graph(sub.add_parser("decompose", help="mp-components, separators and a D-ordered sequence"))
    p.set_defaults(func=cmd_decompose)

    p = with_strategy(with_graph(sub.add_parser("triangulate", help="minimal triangulations")))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true")
    mode.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_triangulate)

    p = with_strategy(with_graph(sub.add_parser("standard-imset", help="standard imset of a graph")))
    p.add_argument("--variant", choices=VARIANTS, default="cg")
    p.set_defaults(func=cmd_standard_imset)

    imset = sub.add_parser("imset", help="read or build imsets")
    imset_sub = imset.add_subparsers(dest="imset_command", required=True)
    p = imset_sub.add_parser("show", help="print an imset file")
    p.add_argument("--file", required=True)
    p.add_argument("--degree", action="store_true", help="print the degree only")
    p.set_defaults(func=cmd_imset_show)
    p = with_graph(imset_sub.add_parser("semi", help="semi-elementary imset of a triplet"))
    p.add_argument("--triplet", required=True, help="A|B|C")
    p.set_defaults(func=cmd_imset_semi)

    p = with_strategy(with_graph(sub.add_parser("ci-test", help="conditional independence by imset arithmetic")))
    p.add_argument("--triplet", required=True, help="A|B|C")
    p.add_argument("--oracle", action="store_true", help="cross-check against graph separation")
    p.set_defaults(func=cmd_ci_test)

    p = sub.add_parser("equiv", help="equivalence of two chain graphs")
    p.add_argument("--graph", action="append", required=True)
    p.add_argument("--method", choices=("imset", "frydenberg"), default="imset")
    p.set_defaults(func=cmd_equiv)

    p = with_graph(sub.add_parser("merge", help="feasible merging of a meta-arrow"))
    p.add_argument("--upper", required=True)
    p.add_argument("--lower", required=True)
    p.set_defaults(func=cmd_merge)

    p = with_graph(sub.add_parser("largest", help="largest equivalent chain graph"))
    p.set_defaults(func=cmd_largest)

    p = with_graph(sub.add_parser("model", help="independence model by separation"))
    p.add_argument("--elementary", action="store_true")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("crosscheck", help="imset CI answers against separation on random graphs")
    p.add_argument("--kind", choices=("ug", "cg"), required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def run(argv: Optional[Sequence[str]] = None, environ=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = RunConfig.from_env(environ).override(
            output=args.output,
            log_level=args.log_level,
            max_universe=args.max_universe,
            max_triangulations=args.max_triangulations,
            max_product=args.max_product,
        )
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=config.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        report = args.func(args, config)
    except (GuardExceededError, ImsetOverflowError) as e:
        print(f"guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ImsetMindError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.render(config.output))
    return report.status


def main() -> int:
    return run()
