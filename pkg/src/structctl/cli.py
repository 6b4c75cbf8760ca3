"""Command-line interface.

Exit codes: 0 success or pass, 1 analysis negative (not controllable, not
resilient), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import report as rpt
from .controllability import ControllabilityError, dedicated_input_configuration, is_structurally_controllable
from .formats import FormatError, export_dot, load_subgraphs, read_topology
from .resilience import critical_edge_scan, edge_controllability_index, verify_single_edge_resilience
from .synthesis import DecompositionError, synthesize

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _roots(text: str | None, required: bool = True) -> frozenset[int] | None:
    if text is None:
        if required:
            raise UsageError("--roots is required")
        return None
    try:
        return frozenset(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"bad --roots value {text!r}; expected e.g. 8,10") from None


def _emit(args, report: dict) -> None:
    sys.stdout.buffer.write(rpt.emit_report(report, args.format))
    sys.stdout.flush()


def _figure(args, g, roots, extra=(), critical=(), title=None) -> None:
    if getattr(args, "figure", None):
        from .plotting import render_graph
        render_graph(args.figure, g, roots, extra, critical, title)


def cmd_check(args) -> int:
    topo = read_topology(args.topology)
    g = topo.graph
    roots = _roots(args.roots)
    verdict = is_structurally_controllable(g, roots)
    _emit(args, rpt.check_report(topo, roots, verdict))
    return EXIT_OK if verdict.controllable else EXIT_NEGATIVE


def cmd_critical(args) -> int:
    topo = read_topology(args.topology)
    g = topo.graph
    roots = _roots(args.roots)
    scan = critical_edge_scan(g, roots)
    _emit(args, rpt.critical_report(topo, roots, scan))
    _figure(args, g, roots, critical=[c.edge for c in scan], title=f"{topo.name}: critical edges")
    return EXIT_OK


def cmd_synthesize(args) -> int:
    topo = read_topology(args.topology)
    g = topo.graph
    roots = _roots(args.roots, required=False)
    subgraphs = load_subgraphs(args.subgraphs) if args.subgraphs else None
    result = synthesize(g, roots, subgraphs, paranoid=args.paranoid)
    report = rpt.synthesis_report(topo, result, timings=args.timings)
    _emit(args, report)
    critical = [tuple(c["edge"]) for c in report["critical_edges"]]
    _figure(args, g, result.initial_roots, result.additional_roots, critical,
            title=f"{topo.name}: final roots {sorted(result.final_roots)}")
    return EXIT_OK if result.verification.passed else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    topo = read_topology(args.topology)
    g = topo.graph
    roots = _roots(args.roots)
    verdict = verify_single_edge_resilience(g, roots, include_root_edges=args.include_root_edges)
    index = None
    if verdict.tested or is_structurally_controllable(g, roots):
        index = edge_controllability_index(g, roots, max_k=args.max_k)
    _emit(args, rpt.verify_report(topo, roots, verdict, args.include_root_edges, index))
    return EXIT_OK if verdict.passed else EXIT_NEGATIVE


def cmd_inputs(args) -> int:
    topo = read_topology(args.topology)
    config = dedicated_input_configuration(topo.graph)
    _emit(args, rpt.inputs_report(topo, config))
    return EXIT_OK


def cmd_export(args) -> int:
    topo = read_topology(args.topology)
    g = topo.graph
    roots = _roots(args.roots, required=False) or frozenset()
    extra: list[int] = []
    critical: list[tuple[int, int]] = []
    added_vertices: list[int] = []
    added_edges: list[tuple[int, int]] = []
    if args.report:
        data = json.loads(Path(args.report).read_text())
        if data.get("schema") != rpt.SCHEMA_VERSION:
            raise UsageError(f"unsupported report schema {data.get('schema')!r}")
        critical = [tuple(c["edge"]) for c in data.get("critical_edges", [])]
        if "final_roots" in data:
            roots = frozenset(data["initial_roots"])
            extra = data["additional_roots"]
            added_vertices = [s["vertex"] for s in data.get("augmentation", [])]
            added_edges = [tuple(e) for e in data.get("added_edges", [])]
        elif "roots" in data and not roots:
            roots = frozenset(data["roots"])
    text = export_dot(g, roots, critical, extra, added_vertices, added_edges)
    if args.dot:
        Path(args.dot).write_text(text)
    else:
        sys.stdout.write(text)
    _figure(args, g, roots, extra, critical, title=topo.name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for any randomized step (recorded; analyses are deterministic)")
    common.add_argument("--max-k", type=int, default=2,
                        help="search bound for the edge-controllability index")

    p = argparse.ArgumentParser(prog="structctl",
                                description="Actuator placement for single-edge-failure "
                                            "resilient structural controllability.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("topology", help="topology file or builtin name (ieee14, toy5)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "test structural controllability")
    sp.add_argument("--roots", required=True)

    sp = add("critical", cmd_critical, "list critical edges with witnesses")
    sp.add_argument("--roots", required=True)
    sp.add_argument("--figure", help="also render a PNG/PDF figure to this path")

    sp = add("synthesize", cmd_synthesize, "compute a resilient root set")
    sp.add_argument("--roots")
    sp.add_argument("--subgraphs", help="subgraph list file or builtin name")
    sp.add_argument("--paranoid", action="store_true",
                    help="re-verify every theorem-backed step exhaustively")
    sp.add_argument("--timings", action="store_true", help="include per-phase timings")
    sp.add_argument("--figure", help="also render a figure to this path")

    sp = add("verify", cmd_verify, "exhaustive single-edge deletion check")
    sp.add_argument("--roots", required=True)
    sp.add_argument("--include-root-edges", action="store_true")

    add("inputs", cmd_inputs, "minimal dedicated input configuration")

    sp = add("export", cmd_export, "write the graph as DOT")
    sp.add_argument("--dot", help="output path (default: stdout)")
    sp.add_argument("--report", help="JSON report to style roots and critical edges from")
    sp.add_argument("--roots")
    sp.add_argument("--figure", help="also render a figure to this path")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (UsageError, FormatError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ControllabilityError as exc:
        print(f"not controllable: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
