"""Critical edges, failure witnesses, critical sets and edge-controllability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .controllability import (
    ControllabilityError,
    as_roots,
    controllable,
    in_neighbourhood,
    input_matching,
    is_structurally_controllable,
)
from .graph import Digraph, Edge, reachable_from, scc_dag

DEFAULT_MAX_K = 3
K_BOUND = 2
CRITICAL_SET_BOUND = 12


@dataclass(frozen=True)
class CriticalEdgeReport:
    """Why removing ``edge`` breaks structural controllability.

    ``witness_x`` is the rootless source SCC left behind (inaccessibility),
    ``witness_s`` a minimal dilation set. Either or both may be present.
    """

    edge: Edge
    witness_kind: Literal["source_scc", "dilation_set"]
    witness_x: frozenset[int] | None
    witness_s: frozenset[int] | None


def _require_controllable(g: Digraph, r: frozenset[int]) -> None:
    if not controllable(g, r):
        raise ControllabilityError("graph is not structurally controllable w.r.t. the root set")


def root_edges(g: Digraph, roots: Iterable[int]) -> frozenset[Edge]:
    r = frozenset(roots)
    return frozenset(e for e in g.edges if e[1] in r)


def non_root_edges(g: Digraph, roots: Iterable[int]) -> tuple[Edge, ...]:
    r = frozenset(roots)
    return tuple(e for e in g.sorted_edges if e[1] not in r)


def _surviving(match: dict[int, int], e: Edge) -> dict[int, int]:
    """The part of a matching of g that is still a matching once e is gone."""
    return {w: u for w, u in match.items() if (u, w) != e}


def failure_witness(g: Digraph, roots: Iterable[int], e: Edge,
                    match: dict[int, int] | None = None) -> CriticalEdgeReport:
    """Witnesses for critical ``e``; ``match`` is g's input matching if already known.

    The dilation witness is grown from g's own matching, so it does not
    depend on whether the matching was passed in.
    """
    r = as_roots(g, roots)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    if match is None:
        match = input_matching(g, r)
    h = g.without_edge(e)
    verdict = is_structurally_controllable(h, r, _surviving(match, e))
    if verdict.controllable:
        raise ValueError(f"edge {e} is not critical")
    x = None
    if verdict.inaccessible_vertices:
        # deleting one edge leaves at most one rootless source SCC: the one holding e's head
        dag = scc_dag(h)
        rootless = [c for c in dag.source_components() if not c & r]
        x = min(rootless, key=min)
    return CriticalEdgeReport(
        edge=e,
        witness_kind="source_scc" if x is not None else "dilation_set",
        witness_x=x,
        witness_s=verdict.dilation_witness,
    )


def critical_edge_scan(g: Digraph, roots: Iterable[int]) -> list[CriticalEdgeReport]:
    """Every edge whose single deletion breaks controllability, with witnesses.

    Deleting an edge outside a fixed saturating matching keeps that matching,
    and deleting one outside a fixed BFS tree from the roots keeps every
    vertex reached. So only the at most 2d edges of those two structures are
    re-tested, one polynomial controllability test each.
    """
    r = as_roots(g, roots)
    _require_controllable(g, r)
    match = input_matching(g, r)
    matched = {(u, w) for w, u in match.items() if u > 0}
    tree = set()
    seen = set(r)
    queue = deque(sorted(r))
    while queue:
        u = queue.popleft()
        for w in g.out_neighbours[u]:
            if w not in seen:
                seen.add(w)
                tree.add((u, w))
                queue.append(w)

    def breaks(e: Edge) -> bool:
        h = g.without_edge(e)
        if e in tree and len(reachable_from(h, r)) != h.vertex_count:
            return True
        if e in matched:
            # the rest of the matching survives; at most one augmenting path is needed
            return len(input_matching(h, r, _surviving(match, e))) != h.vertex_count
        return False

    return [failure_witness(g, r, e, match) for e in sorted(tree | matched) if breaks(e)]


@dataclass(frozen=True)
class ResilienceVerdict:
    passed: bool
    violators: tuple[Edge, ...]
    tested: int

    def __bool__(self) -> bool:
        return self.passed


def verify_single_edge_resilience(g: Digraph, roots: Iterable[int],
                                  include_root_edges: bool = False) -> ResilienceVerdict:
    """Exhaustively delete each edge and re-test controllability.

    Fails immediately (with no violators) when the intact graph is itself
    not controllable; in that case ``tested`` is 0.
    """
    r = as_roots(g, roots)
    if not is_structurally_controllable(g, r):
        return ResilienceVerdict(False, (), 0)
    edges = g.sorted_edges if include_root_edges else non_root_edges(g, r)
    bad = tuple(e for e in edges if not is_structurally_controllable(g.without_edge(e), r))
    return ResilienceVerdict(not bad, bad, len(edges))


def _breaking_removal(g: Digraph, r: frozenset[int], size: int) -> tuple[Edge, ...] | None:
    for combo in combinations(non_root_edges(g, r), size):
        if not is_structurally_controllable(g.without_edges(combo), r):
            return combo
    return None


def is_k_edge_controllable(g: Digraph, roots: Iterable[int], k: int,
                           bound: int = K_BOUND) -> bool:
    """True iff no removal of fewer than ``k`` non-root edges breaks controllability."""
    r = as_roots(g, roots)
    if k < 1:
        raise ValueError("k must be positive")
    if k > bound:
        raise ValueError(f"k={k} exceeds brute-force bound {bound}")
    _require_controllable(g, r)
    return all(_breaking_removal(g, r, size) is None for size in range(1, k))


@dataclass(frozen=True)
class EdgeControllabilityIndex:
    """Either the exact index or the lower bound reached by the search."""

    value: int
    exact: bool
    breaking_set: tuple[Edge, ...] = ()

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def edge_controllability_index(g: Digraph, roots: Iterable[int],
                               max_k: int = DEFAULT_MAX_K) -> EdgeControllabilityIndex:
    r = as_roots(g, roots)
    _require_controllable(g, r)
    for size in range(1, max_k):
        combo = _breaking_removal(g, r, size)
        if combo is not None:
            return EdgeControllabilityIndex(size, True, combo)
    return EdgeControllabilityIndex(max_k, False)


@dataclass(frozen=True)
class CriticalSet:
    members: frozenset[int]
    in_neighbourhood: frozenset[int]


@dataclass(frozen=True)
class CriticalSetSearch:
    sets: tuple[CriticalSet, ...]
    max_size: int
    complete: bool

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)


def critical_sets(g: Digraph, max_size: int | None = None, roots: Iterable[int] = (),
                  bound: int = CRITICAL_SET_BOUND) -> CriticalSetSearch:
    """Enumerate sets S with |S| = |N^-(S)| that keep the equality after any
    single edge from N^-(S) into S is removed.

    Only state edges are removable; a root's input edge never fails. The
    search covers all sets up to ``max_size`` members and says whether that
    is every subset of the graph.
    """
    r = as_roots(g, roots)
    verts = g.sorted_vertices
    n = len(verts)
    if max_size is None:
        max_size = min(n, bound)
    if max_size > bound:
        raise ValueError(f"max_size={max_size} exceeds enumeration bound {bound}")
    bit = {v: 1 << i for i, v in enumerate(verts)}
    in_mask = {v: sum(bit[u] for u in g.in_neighbours[v]) for v in verts}
    out_mask = {v: sum(bit[w] for w in g.out_neighbours[v]) for v in verts}

    found = []
    for size in range(1, max_size + 1):
        for combo in combinations(verts, size):
            s_mask = 0
            n_mask = 0
            inputs = 0
            for v in combo:
                s_mask |= bit[v]
                n_mask |= in_mask[v]
                if v in r:
                    inputs += 1
            if n_mask.bit_count() + inputs != size:
                continue
            if all((out_mask[x] & s_mask).bit_count() >= 2 for x in verts if n_mask & bit[x]):
                members = frozenset(combo)
                found.append(CriticalSet(members, in_neighbourhood(g, members, r)))
    return CriticalSetSearch(tuple(found), max_size, max_size >= n)


def maximal_critical_set(g: Digraph, roots: Iterable[int] = ()) -> frozenset[int]:
    """Union of all critical sets of a 2-edge-controllable graph.

    In such a graph every single-edge deletion stays dilation-free, so the
    second critical-set condition holds automatically and critical sets are
    exactly the nonempty tight sets |N^-(S)| = |S|. Tight sets are closed
    under union; the largest is everything that cannot reach a free left
    vertex by an alternating path of a saturating matching.
    """
    r = as_roots(g, roots)
    match_r = input_matching(g, r)
    if len(match_r) != g.vertex_count:
        raise ControllabilityError("graph has a dilation; tight sets are undefined")
    used = set(match_r.values())
    partner_of = {l: w for w, l in match_r.items()}

    # reverse relation: v depends on partner(l) for every in-neighbour l of v
    dependents: dict[int, list[int]] = {v: [] for v in g.vertices}
    loose = []
    for v in g.sorted_vertices:
        lefts = g.in_neighbours[v] + ((-v,) if v in r else ())
        for l in lefts:
            if l not in used:
                loose.append(v)
            else:
                dependents[partner_of[l]].append(v)
    bad = set(loose)
    stack = list(loose)
    while stack:
        w = stack.pop()
        for v in dependents[w]:
            if v not in bad:
                bad.add(v)
                stack.append(v)
    return frozenset(g.vertices - bad)
