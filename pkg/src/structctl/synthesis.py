"""Two-step actuator synthesis for single-edge-failure resilience.

Step 1 splits the graph into controllable subgraphs of out-degree at most
two, scans their critical edges and covers the resulting inaccessibility
witnesses with extra roots (greedy set cover). Step 2 grows the union of
subgraphs back to the full graph one vertex at a time, guarded by the
vertex-addition conditions, then adds the remaining edges.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .controllability import (
    ControllabilityError,
    as_roots,
    controllable,
    dedicated_input_configuration,
    input_matching,
)
from .graph import Digraph, Edge, reachable_from
from .resilience import (
    CriticalEdgeReport,
    ResilienceVerdict,
    critical_edge_scan,
    maximal_critical_set,
    verify_single_edge_resilience,
)

log = logging.getLogger(__name__)

SubgraphSpec = tuple[Iterable[int], Iterable[Edge] | None]


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class Decomposition:
    subgraphs: tuple[Digraph, ...]
    out_degree_ok: tuple[bool, ...]
    mode: Literal["explicit", "auto"]

    @property
    def covered_vertices(self) -> frozenset[int]:
        return frozenset().union(*(s.vertices for s in self.subgraphs))

    def union(self) -> Digraph:
        out = Digraph(frozenset(), frozenset())
        for s in self.subgraphs:
            out = out.union(s)
        return out


def _weak_components(g: Digraph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in g.sorted_vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.out_neighbours[x] + g.in_neighbours[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _auto_structure(g: Digraph, r: frozenset[int]) -> Digraph:
    # matched in-edges give disjoint stems (from roots) and cycles, out-degree <= 1
    match_r = input_matching(g, r)
    edges = {(l, w) for w, l in match_r.items() if l > 0}
    outdeg = {v: 0 for v in g.vertices}
    for u, _ in edges:
        outdeg[u] += 1

    reached = reachable_from(Digraph(g.vertices, frozenset(edges)), r)
    grew = True
    while grew:
        grew = False
        for u, w in g.sorted_edges:
            if u in reached and w not in reached and outdeg[u] < 2:
                edges.add((u, w))
                outdeg[u] += 1
                reached = reachable_from(Digraph(g.vertices, frozenset(edges)), r)
                grew = True
                break

    for u, w in g.sorted_edges:
        if u in reached and w in reached and (u, w) not in edges and outdeg[u] < 2:
            edges.add((u, w))
            outdeg[u] += 1
    return Digraph(reached, frozenset(e for e in edges if e[0] in reached and e[1] in reached))


def decompose(g: Digraph, roots: Iterable[int],
              subgraphs: Sequence[SubgraphSpec] | None = None) -> Decomposition:
    """Split ``g`` into vertex-disjoint controllable subgraphs.

    With ``subgraphs`` given, each entry is ``(vertices, edges)``; ``edges``
    of ``None`` means the induced subgraph. Otherwise an automatic
    decomposition is built from a saturating matching: matched stems and
    cycles, cycles attached to stems where out-degree allows, then extra
    edges while every out-degree stays at most two. Cycles that cannot be
    attached are left out for the vertex-addition step.
    """
    r = as_roots(g, roots)
    if not controllable(g, r):
        raise ControllabilityError("graph is not structurally controllable w.r.t. the root set")

    if subgraphs is None:
        structure = _auto_structure(g, r)
        parts = [structure.induced(c) for c in _weak_components(structure)]
        if not parts:
            raise DecompositionError("automatic decomposition produced no subgraph")
        mode: Literal["explicit", "auto"] = "auto"
    else:
        parts = []
        seen: set[int] = set()
        for i, (verts, edges) in enumerate(subgraphs, start=1):
            verts = frozenset(int(v) for v in verts)
            if not verts <= g.vertices:
                raise DecompositionError(f"subgraph {i}: unknown vertices {sorted(verts - g.vertices)}")
            if verts & seen:
                raise DecompositionError(f"subgraph {i}: overlaps an earlier subgraph at {sorted(verts & seen)}")
            seen |= verts
            if edges is None:
                part = g.induced(verts)
            else:
                edges = frozenset((int(u), int(w)) for u, w in edges)
                stray = sorted(e for e in edges if e not in g.edges)
                if stray:
                    raise DecompositionError(f"subgraph {i}: edges not in graph: {stray}")
                outside = sorted(e for e in edges if e[0] not in verts or e[1] not in verts)
                if outside:
                    raise DecompositionError(f"subgraph {i}: edges leave the vertex list: {outside}")
                part = Digraph(verts, edges)
            parts.append(part)
        mode = "explicit"

    for i, part in enumerate(parts, start=1):
        if not controllable(part, r & part.vertices):
            raise DecompositionError(f"subgraph {i} not controllable w.r.t. its roots {sorted(r & part.vertices)}")
        if mode == "explicit" and part.max_out_degree() > 2:
            raise DecompositionError(f"subgraph {i} has out-degree {part.max_out_degree()} > 2")
    return Decomposition(tuple(parts), tuple(p.max_out_degree() <= 2 for p in parts), mode)


@dataclass(frozen=True)
class Witness:
    vertices: frozenset[int]
    kind: Literal["X", "S"]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class WitnessFamily:
    witnesses: tuple[Witness, ...]
    reports: tuple[tuple[CriticalEdgeReport, ...], ...]

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        return tuple(w.vertices for w in self.witnesses)


def _family(reports: Iterable[CriticalEdgeReport], include_s: bool) -> list[Witness]:
    by_set: dict[frozenset[int], tuple[str, list[Edge]]] = {}
    for rep in reports:
        found = []
        if rep.witness_x:
            found.append(("X", rep.witness_x))
        if include_s and rep.witness_s:
            found.append(("S", rep.witness_s))
        for kind, verts in found:
            entry = by_set.setdefault(verts, (kind, []))
            entry[1].append(rep.edge)
    return [Witness(v, k, tuple(es)) for v, (k, es) in by_set.items()]


def collect_witnesses(decomposition: Decomposition, roots: Iterable[int]) -> WitnessFamily:
    """Scan every subgraph and gather the sets that need an extra root.

    Dilation witnesses are left out of subgraphs with out-degree at most two:
    there, each minimal dilation set holds a vertex of in-degree one whose
    single in-edge is itself critical with a singleton inaccessibility
    witness, so covering the inaccessibility witnesses covers both.
    """
    r = frozenset(roots)
    witnesses: list[Witness] = []
    reports = []
    for part, low_out in zip(decomposition.subgraphs, decomposition.out_degree_ok):
        scan = critical_edge_scan(part, r & part.vertices)
        reports.append(tuple(scan))
        witnesses.extend(_family(scan, include_s=not low_out))
    merged: dict[frozenset[int], Witness] = {}
    for w in witnesses:
        if w.vertices in merged:
            old = merged[w.vertices]
            merged[w.vertices] = Witness(w.vertices, old.kind, old.edges + w.edges)
        else:
            merged[w.vertices] = w
    return WitnessFamily(tuple(merged.values()), tuple(reports))


@dataclass(frozen=True)
class CoverInstance:
    universe: tuple[frozenset[int], ...]
    families: dict[int, frozenset[int]] = field(compare=False)
    chosen: tuple[int, ...]

    def covers(self) -> bool:
        hit = frozenset().union(*(self.families[v] for v in self.chosen)) if self.chosen else frozenset()
        return hit >= frozenset(range(len(self.universe)))


def cover_additional_roots(witness_sets: Sequence[frozenset[int]], roots: Iterable[int]) -> CoverInstance:
    """Greedy set cover over the witness sets.

    Each round picks the vertex contained in the most uncovered witnesses,
    smallest id on ties. Within a factor ln(n) + 1 of the optimum.
    """
    r = frozenset(roots)
    universe = tuple(frozenset(s) for s in witness_sets)
    families: dict[int, set[int]] = {}
    for i, s in enumerate(universe):
        if not s:
            raise ValueError(f"witness {i} is empty")
        if s & r:
            raise ValueError(f"witness {sorted(s)} intersects the root set")
        for v in s:
            families.setdefault(v, set()).add(i)
    frozen = {v: frozenset(ix) for v, ix in families.items()}

    uncovered = set(range(len(universe)))
    chosen: list[int] = []
    while uncovered:
        best = min(frozen, key=lambda v: (-len(frozen[v] & uncovered), v))
        chosen.append(best)
        uncovered -= frozen[best]
    return CoverInstance(universe, frozen, tuple(chosen))


@dataclass(frozen=True)
class AugmentationResult:
    accepted: bool
    graph: Digraph
    condition_a: bool
    condition_b: bool
    offending_set: frozenset[int] | None
    verified: bool | None
    diagnostic: str


def augment_vertex(current: Digraph, roots: Iterable[int], z: int,
                   incoming: Iterable[Edge], outgoing: Iterable[Edge] = (),
                   paranoid: bool = False, check_precondition: bool = True) -> AugmentationResult:
    """Add ``z`` with its edges if the vertex-addition conditions hold.

    (a) ``z`` has at least two in-neighbours in ``current``;
    (b) for every critical set S of ``current``, if N^-(z) meets N^-(S) then
        ``z`` has at least two in-neighbours outside N^-(S).

    Since critical sets of a 2-edge-controllable graph are closed under
    union, (b) is checked against the largest one only. When the conditions
    fail the returned graph is unchanged and the diagnostic says why; adding
    ``z`` as a root is always a sound alternative.
    """
    r = as_roots(current, roots)
    if z in current.vertices:
        raise ValueError(f"vertex {z} already present")
    incoming = sorted({(int(u), int(w)) for u, w in incoming})
    outgoing = sorted({(int(u), int(w)) for u, w in outgoing})
    for u, w in incoming:
        if w != z or u not in current.vertices:
            raise ValueError(f"incoming edge ({u}, {w}) must run from the current graph into {z}")
    for u, w in outgoing:
        if u != z or w not in current.vertices:
            raise ValueError(f"outgoing edge ({u}, {w}) must run from {z} into the current graph")
    if check_precondition and not verify_single_edge_resilience(current, r):
        raise ControllabilityError("current graph is not 2-edge controllable w.r.t. the root set")

    preds = frozenset(u for u, _ in incoming)
    cond_a = len(preds) >= 2
    top = maximal_critical_set(current, r)
    cond_b, offending = True, None
    if top:
        top_nbrs = frozenset(u for v in top for u in current.in_neighbours[v])
        if preds & top_nbrs and len(preds - top_nbrs) < 2:
            cond_b, offending = False, top

    if not (cond_a and cond_b):
        reasons = []
        if not cond_a:
            reasons.append(f"condition (a): {z} has {len(preds)} in-neighbour(s), needs 2")
        if not cond_b:
            reasons.append(f"condition (b): in-neighbours of {z} meet N^-(S) for critical set "
                           f"{sorted(offending)} with fewer than 2 outside it")
        return AugmentationResult(False, current, cond_a, cond_b, offending, None,
                                  "; ".join(reasons) + f"; fallback: add {z} as a root")

    grown = current.with_vertex(z, incoming + outgoing)
    verified = None
    if paranoid:
        verified = verify_single_edge_resilience(grown, r).passed
    diag = "conditions (a) and (b) hold"
    if verified is False:
        diag += "; exhaustive check found a single-edge failure"
    return AugmentationResult(True, grown, cond_a, cond_b, None, verified, diag)


def add_edges(current: Digraph, roots: Iterable[int], edges: Iterable[Edge],
              paranoid: bool = False) -> Digraph:
    """Add edges; single-edge resilience is preserved by adding edges."""
    edges = [(int(u), int(w)) for u, w in edges]
    for u, w in edges:
        if u not in current.vertices or w not in current.vertices:
            raise ValueError(f"edge ({u}, {w}) has an unknown endpoint")
    grown = current.with_edges(edges)
    if paranoid and not verify_single_edge_resilience(grown, roots):
        raise AssertionError("adding edges broke single-edge resilience")
    return grown


@dataclass(frozen=True)
class AugmentationStep:
    vertex: int
    action: Literal["added", "root", "promoted"]
    in_neighbours: tuple[int, ...]
    condition_a: bool | None
    condition_b: bool | None
    verified: bool | None
    note: str


@dataclass(frozen=True)
class SynthesisResult:
    initial_roots: frozenset[int]
    additional_roots: frozenset[int]
    final_roots: frozenset[int]
    mode: Literal["explicit", "auto", "whole_graph", "already_resilient"]
    decomposition: Decomposition | None
    witnesses: WitnessFamily | None
    cover: CoverInstance | None
    augmentation_log: tuple[AugmentationStep, ...]
    added_edges: tuple[Edge, ...]
    verification: ResilienceVerdict
    fallback_reason: str | None = None
    timings: dict[str, float] = field(default_factory=dict, compare=False)


def _grow(g: Digraph, decomposition: Decomposition, roots: frozenset[int],
          paranoid: bool) -> tuple[Digraph, frozenset[int], list[AugmentationStep]]:
    current = decomposition.union()
    roots = set(roots)
    steps: list[AugmentationStep] = []
    remaining = set(g.vertices - current.vertices)

    def edges_with(z: int, verts: frozenset[int]) -> tuple[list[Edge], list[Edge]]:
        inc = [(u, z) for u in g.in_neighbours[z] if u in verts]
        out = [(z, w) for w in g.out_neighbours[z] if w in verts]
        return inc, out

    for z in sorted(remaining & roots):
        inc, out = edges_with(z, current.vertices)
        current = current.with_vertex(z, inc + out)
        steps.append(AugmentationStep(z, "root", tuple(u for u, _ in inc), None, None, None,
                                      "already a root"))
        remaining.discard(z)

    while remaining:
        for z in sorted(remaining):
            inc, out = edges_with(z, current.vertices)
            res = augment_vertex(current, roots, z, inc, out, paranoid=paranoid,
                                 check_precondition=False)
            if res.accepted and res.verified is not False:
                current = res.graph
                steps.append(AugmentationStep(z, "added", tuple(u for u, _ in inc), True, True,
                                              res.verified, res.diagnostic))
                remaining.discard(z)
                break
        else:
            z = min(remaining)
            inc, out = edges_with(z, current.vertices)
            res = augment_vertex(current, roots, z, inc, out, check_precondition=False)
            roots.add(z)
            current = current.with_vertex(z, inc + out)
            steps.append(AugmentationStep(z, "promoted", tuple(u for u, _ in inc), res.condition_a,
                                          res.condition_b, None, res.diagnostic))
            remaining.discard(z)
    return current, frozenset(roots), steps


def _whole_graph(g: Digraph, r: frozenset[int]) -> tuple[WitnessFamily, CoverInstance, frozenset[int]]:
    scan = critical_edge_scan(g, r)
    family = WitnessFamily(tuple(_family(scan, include_s=True)), (tuple(scan),))
    cover = cover_additional_roots(family.sets, r)
    return family, cover, r | frozenset(cover.chosen)


def synthesize(g: Digraph, roots: Iterable[int] | None = None,
               subgraphs: Sequence[SubgraphSpec] | None = None,
               paranoid: bool = False) -> SynthesisResult:
    """Find a root set keeping ``g`` controllable after any single edge failure.

    Without ``roots`` a minimal dedicated input configuration is used. The
    result is always checked by exhaustive single-edge deletion; if the
    decomposition route does not pass, the whole graph is scanned directly
    and both kinds of witness are covered.
    """
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    r = dedicated_input_configuration(g).roots if roots is None else as_roots(g, roots)
    if not controllable(g, r):
        raise ControllabilityError("graph is not structurally controllable w.r.t. the root set")

    if subgraphs is None:
        already = verify_single_edge_resilience(g, r)
        if already:
            timings["verify"] = time.perf_counter() - t0
            return SynthesisResult(r, frozenset(), r, "already_resilient", None, None, None,
                                   (), (), already, timings=timings)

    t = time.perf_counter()
    decomposition = decompose(g, r, subgraphs)
    timings["decompose"] = time.perf_counter() - t

    t = time.perf_counter()
    family = collect_witnesses(decomposition, r)
    timings["scan"] = time.perf_counter() - t

    t = time.perf_counter()
    cover = cover_additional_roots(family.sets, r)
    step1_roots = r | frozenset(cover.chosen)
    timings["cover"] = time.perf_counter() - t

    t = time.perf_counter()
    current, final_roots, steps = _grow(g, decomposition, step1_roots, paranoid)
    added = tuple(sorted(g.edges - current.edges))
    current = add_edges(current, final_roots, added, paranoid=paranoid)
    timings["augment"] = time.perf_counter() - t

    t = time.perf_counter()
    verdict = verify_single_edge_resilience(g, final_roots)
    timings["verify"] = time.perf_counter() - t
    if verdict:
        return SynthesisResult(r, final_roots - r, final_roots, decomposition.mode, decomposition,
                               family, cover, tuple(steps), added, verdict, timings=timings)

    reason = f"decomposition result failed verification at edges {list(verdict.violators)}"
    log.warning("%s; falling back to whole-graph scan", reason)
    t = time.perf_counter()
    family, cover, final_roots = _whole_graph(g, r)
    verdict = verify_single_edge_resilience(g, final_roots)
    timings["fallback"] = time.perf_counter() - t
    if not verdict:
        raise RuntimeError(f"whole-graph fallback failed verification at {list(verdict.violators)}")
    return SynthesisResult(r, final_roots - r, final_roots, "whole_graph", decomposition, family,
                           cover, (), (), verdict, fallback_reason=reason, timings=timings)
