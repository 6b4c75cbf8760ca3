"""Structural controllability with dedicated inputs.

A root set ``R`` stands for ``B = diag(delta)``: every root vertex gets its
own input vertex, which is its only extra in-neighbour. Input vertices are
encoded as the negated id of the root they drive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graph import Digraph, bipartite_of, hopcroft_karp, maximum_matching, reachable_from, scc_dag


class ControllabilityError(ValueError):
    """Raised when an operation requires a structurally controllable pair."""


def as_roots(g: Digraph, roots: Iterable[int]) -> frozenset[int]:
    r = frozenset(int(v) for v in roots)
    unknown = r - g.vertices
    if unknown:
        raise ValueError(f"root vertices not in graph: {sorted(unknown)}")
    return r


def in_neighbourhood(g: Digraph, s: Iterable[int], roots: frozenset[int] = frozenset()) -> frozenset[int]:
    """N^-(S) in G(A, B); input vertices appear as ``-root``."""
    out: set[int] = set()
    for v in s:
        out.update(g.in_neighbours[v])
        if v in roots:
            out.add(-v)
    return frozenset(out)


def is_deficient(g: Digraph, s: Iterable[int], roots: frozenset[int] = frozenset()) -> bool:
    s = frozenset(s)
    return bool(s) and len(in_neighbourhood(g, s, roots)) < len(s)


def input_matching(g: Digraph, roots: frozenset[int],
                   initial: dict[int, int] | None = None) -> dict[int, int]:
    """Maximum matching of H(A) augmented by one input per root (right -> left).

    ``initial`` is a valid partial matching of ``g`` to grow from.
    """
    adj = {}
    for w in g.sorted_vertices:
        nbrs = g.in_neighbours[w]
        adj[w] = ((-w,) + nbrs) if w in roots else nbrs
    return hopcroft_karp(adj, initial)


def _alternating_reach(g: Digraph, roots: frozenset[int], match_r: dict[int, int], start: int) -> frozenset[int]:
    match_l = {l: r for r, l in match_r.items()}
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        lefts = g.in_neighbours[w] + ((-w,) if w in roots else ())
        for l in lefts:
            r = match_l.get(l)
            # every left reached is matched, otherwise the matching was not maximum
            if r is not None and r not in seen:
                seen.add(r)
                queue.append(r)
    return frozenset(seen)


def _matching_within(g: Digraph, s: frozenset[int], roots: frozenset[int]) -> dict[int, int]:
    adj = {w: ((-w,) if w in roots else ()) + g.in_neighbours[w] for w in sorted(s)}
    return hopcroft_karp(adj)


def shrink_deficient(g: Digraph, s: frozenset[int], roots: frozenset[int] = frozenset()) -> frozenset[int]:
    """An inclusion-minimal deficient subset of the deficient set ``s``.

    Match ``s`` into N^-(s) as far as possible; the alternating-path reach
    set of an unmatched member has exactly one in-neighbour fewer than
    members, and every proper subset of it can be matched.
    """
    s = frozenset(s)
    if not is_deficient(g, s, roots):
        raise ValueError("set is not deficient")
    match_r = _matching_within(g, s, roots)
    return _alternating_reach(g, roots, match_r, min(s - match_r.keys()))


def is_minimal_deficient(g: Digraph, s: Iterable[int], roots: frozenset[int] = frozenset()) -> bool:
    """True when ``s`` is deficient and no proper subset is."""
    s = frozenset(s)
    if not s or len(in_neighbourhood(g, s, roots)) != len(s) - 1:
        return False
    match_r = _matching_within(g, s, roots)
    if len(match_r) != len(s) - 1:
        return False
    return _alternating_reach(g, roots, match_r, min(s - match_r.keys())) == s


class DilationCheck(NamedTuple):
    free: bool
    witness: frozenset[int] | None


def dilation_free(g: Digraph, roots: Iterable[int],
                  initial: dict[int, int] | None = None) -> DilationCheck:
    """Check for a dilation via saturation of the input-augmented matching.

    On failure the witness is the alternating-path reach set of the smallest
    unmatched vertex, which is a minimal Hall violator disjoint from the roots.
    ``initial`` optionally warm-starts the matching.
    """
    r = as_roots(g, roots)
    match_r = input_matching(g, r, initial)
    unmatched = sorted(g.vertices - match_r.keys())
    if not unmatched:
        return DilationCheck(True, None)
    return DilationCheck(False, _alternating_reach(g, r, match_r, unmatched[0]))


@dataclass(frozen=True)
class ControllabilityVerdict:
    controllable: bool
    inaccessible_vertices: frozenset[int]
    dilation_witness: frozenset[int] | None

    def __bool__(self) -> bool:
        return self.controllable


def is_structurally_controllable(g: Digraph, roots: Iterable[int],
                                 initial: dict[int, int] | None = None) -> ControllabilityVerdict:
    """Lin's criterion: every state accessible from the inputs and no dilation."""
    r = as_roots(g, roots)
    inaccessible = g.vertices - reachable_from(g, r)
    dil = dilation_free(g, r, initial)
    return ControllabilityVerdict(
        controllable=not inaccessible and dil.free,
        inaccessible_vertices=frozenset(inaccessible),
        dilation_witness=dil.witness,
    )


def controllable(g: Digraph, roots: frozenset[int]) -> bool:
    """Fast boolean form of :func:`is_structurally_controllable` (no witnesses)."""
    if len(reachable_from(g, roots)) != g.vertex_count:
        return False
    return len(input_matching(g, roots)) == g.vertex_count


@dataclass(frozen=True)
class InputConfiguration:
    roots: frozenset[int]
    from_unmatched: frozenset[int]
    from_source_sccs: frozenset[int]


def dedicated_input_configuration(g: Digraph) -> InputConfiguration:
    """Smallest dedicated root set: unmatched vertices plus source-SCC representatives.

    The maximum matching is chosen to leave unmatched vertices inside as many
    source SCCs as possible. This is done by growing a maximum matching of
    H(A) in an extended graph where each source SCC gets one extra left
    vertex adjacent to all of its members; augmenting paths never unmatch a
    vertex, so the H(A) part stays maximum while the SCC part is maximised.
    """
    h = bipartite_of(g)
    base = maximum_matching(h)
    initial = {r: l for l, r in base.pairs}

    sources = scc_dag(g).source_components()
    adj: dict = {}
    for w in g.sorted_vertices:
        adj[w] = h.right_adjacency[w]
    extended = {w: list(ns) for w, ns in adj.items()}
    for k, comp in enumerate(sources):
        for w in sorted(comp):
            extended[w].append(("scc", k))
    match_r = hopcroft_karp(extended, initial)

    unmatched = frozenset(w for w in g.vertices if not isinstance(match_r.get(w), int))
    reps = frozenset(min(comp) for comp in sources if not comp & unmatched)
    return InputConfiguration(unmatched | reps, unmatched, reps)
