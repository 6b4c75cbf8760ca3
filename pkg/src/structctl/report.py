"""Analysis reports: plain dicts with a stable JSON layout and a text summary."""

from __future__ import annotations

import json
from typing import Any, Iterable

from .controllability import ControllabilityVerdict, InputConfiguration
from .formats import TopologyFile
from .resilience import CriticalEdgeReport, EdgeControllabilityIndex, ResilienceVerdict
from .synthesis import SynthesisResult

SCHEMA_VERSION = 1


def _vs(vs: Iterable[int] | None) -> list[int] | None:
    return None if vs is None else sorted(int(v) for v in vs)


def _es(es: Iterable[tuple[int, int]]) -> list[list[int]]:
    return [[int(u), int(w)] for u, w in sorted(es)]


def input_digest(topo: TopologyFile) -> dict[str, Any]:
    g = topo.graph
    return {
        "name": topo.name,
        "mode": topo.mode,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "max_out_degree": g.max_out_degree(),
    }


def _base(command: str, topo: TopologyFile) -> dict[str, Any]:
    return {"schema": SCHEMA_VERSION, "command": command, "input": input_digest(topo)}


def critical_edge_entry(rep: CriticalEdgeReport) -> dict[str, Any]:
    return {
        "edge": [rep.edge[0], rep.edge[1]],
        "witness_kind": rep.witness_kind,
        "X": _vs(rep.witness_x),
        "S": _vs(rep.witness_s),
    }


def check_report(topo: TopologyFile, roots: Iterable[int], verdict: ControllabilityVerdict) -> dict:
    out = _base("check", topo)
    out.update({
        "roots": _vs(roots),
        "controllable": verdict.controllable,
        "inaccessible": _vs(verdict.inaccessible_vertices),
        "dilation_witness": _vs(verdict.dilation_witness),
    })
    return out


def critical_report(topo: TopologyFile, roots: Iterable[int], scan: list[CriticalEdgeReport]) -> dict:
    out = _base("critical", topo)
    out.update({"roots": _vs(roots), "critical_edges": [critical_edge_entry(r) for r in scan]})
    return out


def verify_report(topo: TopologyFile, roots: Iterable[int], verdict: ResilienceVerdict,
                  include_root_edges: bool, index: EdgeControllabilityIndex | None) -> dict:
    out = _base("verify", topo)
    out.update({
        "roots": _vs(roots),
        "include_root_edges": include_root_edges,
        "edges_tested": verdict.tested,
        "passed": verdict.passed,
        "violators": _es(verdict.violators),
        "edge_controllability_index": None if index is None else str(index),
    })
    return out


def inputs_report(topo: TopologyFile, config: InputConfiguration) -> dict:
    out = _base("inputs", topo)
    out.update({
        "roots": _vs(config.roots),
        "from_unmatched": _vs(config.from_unmatched),
        "from_source_sccs": _vs(config.from_source_sccs),
    })
    return out


def synthesis_report(topo: TopologyFile, result: SynthesisResult, timings: bool = False) -> dict:
    out = _base("synthesize", topo)
    critical = []
    if result.witnesses is not None:
        for i, scan in enumerate(result.witnesses.reports, start=1):
            for rep in scan:
                entry = critical_edge_entry(rep)
                entry["subgraph"] = i
                critical.append(entry)
    out.update({
        "mode": result.mode,
        "initial_roots": _vs(result.initial_roots),
        "additional_roots": _vs(result.additional_roots),
        "final_roots": _vs(result.final_roots),
        "subgraphs": None if result.decomposition is None else [
            {"vertices": _vs(s.vertices), "edges": _es(s.edges), "out_degree_ok": ok}
            for s, ok in zip(result.decomposition.subgraphs, result.decomposition.out_degree_ok)
        ],
        "critical_edges": critical,
        "witnesses": [] if result.witnesses is None else [
            {"vertices": _vs(w.vertices), "kind": w.kind, "edges": _es(w.edges)}
            for w in result.witnesses.witnesses
        ],
        "cover_trace": [] if result.cover is None else list(result.cover.chosen),
        "augmentation": [
            {"vertex": s.vertex, "action": s.action, "in_neighbours": list(s.in_neighbours),
             "condition_a": s.condition_a, "condition_b": s.condition_b,
             "verified": s.verified, "note": s.note}
            for s in result.augmentation_log
        ],
        "added_edges": _es(result.added_edges),
        "verification": {
            "passed": result.verification.passed,
            "edges_tested": result.verification.tested,
            "violators": _es(result.verification.violators),
        },
        "fallback_reason": result.fallback_reason,
    })
    if timings:
        out["timings"] = {k: round(v, 6) for k, v in sorted(result.timings.items())}
    return out


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _fmt_set(vs) -> str:
    return "{" + ", ".join(f"v{v}" for v in vs) + "}" if vs is not None else "-"


def to_text(report: dict) -> str:
    cmd = report.get("command")
    inp = report["input"]
    lines = [f"{cmd}: {inp['name']} ({inp['vertices']} vertices, {inp['edges']} edges, {inp['mode']})"]
    if cmd == "check":
        lines.append(f"roots {_fmt_set(report['roots'])}: "
                     + ("structurally controllable" if report["controllable"] else "NOT controllable"))
        if report["inaccessible"]:
            lines.append(f"  inaccessible: {_fmt_set(report['inaccessible'])}")
        if report["dilation_witness"]:
            lines.append(f"  dilation: {_fmt_set(report['dilation_witness'])}")
    elif cmd == "inputs":
        lines.append(f"dedicated inputs at {_fmt_set(report['roots'])}")
        lines.append(f"  unmatched: {_fmt_set(report['from_unmatched'])}; "
                     f"source SCC representatives: {_fmt_set(report['from_source_sccs'])}")
    elif cmd == "verify":
        status = "PASS" if report["passed"] else "FAIL"
        lines.append(f"roots {_fmt_set(report['roots'])}: {status} "
                     f"({report['edges_tested']} single-edge deletions tested)")
        for u, w in report["violators"]:
            lines.append(f"  breaks on ({u}, {w})")
        if report["edge_controllability_index"] is not None:
            lines.append(f"  edge-controllability index: {report['edge_controllability_index']}")
    if cmd in ("critical", "synthesize"):
        if cmd == "critical":
            lines.append(f"roots {_fmt_set(report['roots'])}")
        lines.append(f"critical edges: {len(report['critical_edges'])}")
        for i, c in enumerate(report["critical_edges"], start=1):
            u, w = c["edge"]
            wit = []
            if c["X"]:
                wit.append(f"X={_fmt_set(c['X'])}")
            if c["S"]:
                wit.append(f"S={_fmt_set(c['S'])}")
            lines.append(f"  e{i} = (v{u}, v{w}): " + ", ".join(wit))
    if cmd == "synthesize":
        lines.append(f"mode: {report['mode']}")
        lines.append(f"initial roots: {_fmt_set(report['initial_roots'])}")
        if report["cover_trace"]:
            lines.append("greedy cover picks: " + ", ".join(f"v{v}" for v in report["cover_trace"]))
        for step in report["augmentation"]:
            lines.append(f"  {step['action']} v{step['vertex']}: {step['note']}")
        if report["added_edges"]:
            lines.append(f"edges restored: {len(report['added_edges'])}")
        lines.append(f"final roots: {_fmt_set(report['final_roots'])} "
                     f"(additional {_fmt_set(report['additional_roots'])})")
        v = report["verification"]
        lines.append(f"verification: {'PASS' if v['passed'] else 'FAIL'} "
                     f"({v['edges_tested']} single-edge deletions)")
        if report.get("fallback_reason"):
            lines.append(f"note: {report['fallback_reason']}")
    return "\n".join(lines) + "\n"


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(report).encode()
    if fmt == "text":
        return to_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")
