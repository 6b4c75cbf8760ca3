"""Digraph and bipartite primitives: matching, condensation, reachability.

Edges are stored in flow direction: ``(u, w)`` means state ``u`` influences
state ``w``, i.e. the entry ``a[w, u]`` of the state matrix is nonzero.
Vertex identifiers are positive integers (1-based).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

Edge = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """Immutable sparsity pattern of a state matrix.

    Self-loops are allowed (nonzero diagonal entries). Duplicate edges are
    collapsed by construction.
    """

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for u, w in self.edges:
            if u not in self.vertices or w not in self.vertices:
                raise ValueError(f"edge ({u}, {w}) references an undeclared vertex")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[Edge]) -> "Digraph":
        return cls(frozenset(vertices), frozenset((int(u), int(w)) for u, w in edges))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def in_neighbours(self) -> dict[int, tuple[int, ...]]:
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, w in self.sorted_edges:
            nbrs[w].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    @cached_property
    def out_neighbours(self) -> dict[int, tuple[int, ...]]:
        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, w in self.sorted_edges:
            nbrs[u].append(w)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbours[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_neighbours[v])

    def max_out_degree(self) -> int:
        return max((len(ns) for ns in self.out_neighbours.values()), default=0)

    def max_in_degree(self) -> int:
        return max((len(ns) for ns in self.in_neighbours.values()), default=0)

    def without_edges(self, removed: Iterable[Edge]) -> "Digraph":
        return Digraph(self.vertices, self.edges - frozenset(removed))

    def without_edge(self, e: Edge) -> "Digraph":
        return self.without_edges((e,))

    def with_edges(self, added: Iterable[Edge]) -> "Digraph":
        return Digraph(self.vertices, self.edges | frozenset(added))

    def with_vertex(self, z: int, edges: Iterable[Edge] = ()) -> "Digraph":
        if z in self.vertices:
            raise ValueError(f"vertex {z} already present")
        return Digraph(self.vertices | {z}, self.edges | frozenset(edges))

    def induced(self, keep: Iterable[int]) -> "Digraph":
        keep = frozenset(keep)
        return Digraph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def union(self, other: "Digraph") -> "Digraph":
        return Digraph(self.vertices | other.vertices, self.edges | other.edges)


def build_digraph(vertex_count: int, edge_list: Iterable[Sequence[int]],
                  undirected_expansion: bool = False) -> Digraph:
    """Build a digraph on vertices ``1..vertex_count``.

    With ``undirected_expansion`` each pair ``{u, v}`` yields both ``u -> v``
    and ``v -> u``.
    """
    if vertex_count < 1:
        raise ValueError("vertex count must be positive")
    edges: set[Edge] = set()
    for pair in edge_list:
        u, w = int(pair[0]), int(pair[1])
        for x in (u, w):
            if not 1 <= x <= vertex_count:
                raise ValueError(f"endpoint {x} out of range 1..{vertex_count}")
        edges.add((u, w))
        if undirected_expansion:
            edges.add((w, u))
    return Digraph(frozenset(range(1, vertex_count + 1)), frozenset(edges))


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite representation: left copies ``v^1``, right copies ``v^2``.

    ``gamma`` holds pairs ``(u, w)`` standing for the undirected edge
    ``(u^1, w^2)``; one per digraph edge ``u -> w``.
    """

    left: frozenset[int]
    right: frozenset[int]
    gamma: frozenset[Edge]

    @cached_property
    def right_adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {w: [] for w in self.right}
        for u, w in self.gamma:
            adj[w].append(u)
        return {w: tuple(sorted(us)) for w, us in adj.items()}


def bipartite_of(g: Digraph) -> BipartiteGraph:
    return BipartiteGraph(g.vertices, g.vertices, g.edges)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Edge]  # (left, right)
    unmatched_right: frozenset[int]
    unmatched_left: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def hopcroft_karp(adjacency: Mapping[Hashable, Sequence[Hashable]],
                  initial: Mapping[Hashable, Hashable] | None = None) -> dict:
    """Maximum bipartite matching driven from the keys of ``adjacency``.

    ``adjacency`` maps each right vertex to its candidate left partners, in
    the order they should be tried. ``initial`` is an optional valid matching
    (right -> left) to grow from; matched right vertices stay matched.
    Returns a dict right -> left. Runs in O(sqrt(V) E).
    """
    order = list(adjacency)
    match_r: dict = dict(initial or {})
    match_l: dict = {l: r for r, l in match_r.items()}
    inf = float("inf")

    while True:
        # BFS layering from free right vertices
        dist: dict = {}
        queue: deque = deque()
        for r in order:
            if r not in match_r:
                dist[r] = 0
                queue.append(r)
        found = inf
        while queue:
            r = queue.popleft()
            if dist[r] >= found:
                continue
            for l in adjacency[r]:
                r2 = match_l.get(l)
                if r2 is None:
                    found = min(found, dist[r] + 1)
                elif r2 not in dist:
                    dist[r2] = dist[r] + 1
                    queue.append(r2)
        if found == inf:
            break

        # DFS along layers, iterative to avoid recursion limits
        progressed = False
        for start in order:
            if start in match_r:
                continue
            stack = [start]
            iters = {start: iter(adjacency[start])}
            chosen: list = []
            final = None
            while stack and final is None:
                r = stack[-1]
                for l in iters[r]:
                    r2 = match_l.get(l)
                    if r2 is None:
                        if dist[r] + 1 == found:
                            final = l
                            break
                    elif dist.get(r2) == dist[r] + 1:
                        chosen.append(l)
                        stack.append(r2)
                        iters[r2] = iter(adjacency[r2])
                        break
                else:
                    dist[r] = inf
                    stack.pop()
                    if chosen:
                        chosen.pop()
            if final is None:
                continue
            for r, l in zip(stack, chosen + [final]):
                match_r[r] = l
                match_l[l] = r
            for r in stack:
                dist[r] = inf
            progressed = True
        if not progressed:
            break
    return match_r


def maximum_matching(h: BipartiteGraph) -> Matching:
    """Deterministic maximum matching of ``h`` (vertices tried in ascending order)."""
    adj = {w: h.right_adjacency[w] for w in sorted(h.right)}
    match_r = hopcroft_karp(adj)
    pairs = frozenset((l, r) for r, l in match_r.items())
    return Matching(
        pairs=pairs,
        unmatched_right=h.right - frozenset(match_r),
        unmatched_left=h.left - frozenset(match_r.values()),
    )


@dataclass(frozen=True)
class SccDag:
    """Condensation of a digraph.

    ``components`` are sorted by their smallest vertex; ``dag_edges`` index
    into ``components``.
    """

    components: tuple[frozenset[int], ...]
    dag_edges: frozenset[tuple[int, int]]
    component_of: Mapping[int, int] = field(repr=False)

    @cached_property
    def in_degree(self) -> tuple[int, ...]:
        deg = [0] * len(self.components)
        for _, j in self.dag_edges:
            deg[j] += 1
        return tuple(deg)

    @cached_property
    def out_degree(self) -> tuple[int, ...]:
        deg = [0] * len(self.components)
        for i, _ in self.dag_edges:
            deg[i] += 1
        return tuple(deg)

    def source_components(self) -> list[frozenset[int]]:
        return [c for c, d in zip(self.components, self.in_degree) if d == 0]


def strongly_connected_components(g: Digraph) -> list[frozenset[int]]:
    """Tarjan's algorithm, iterative. Linear in |V| + |E|."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[frozenset[int]] = []
    counter = 0
    succ = g.out_neighbours

    for root in g.sorted_vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            nbrs = succ[v]
            recurse = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def scc_dag(g: Digraph) -> SccDag:
    comps = sorted(strongly_connected_components(g), key=min)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    dag = frozenset(
        (comp_of[u], comp_of[w]) for u, w in g.edges if comp_of[u] != comp_of[w]
    )
    return SccDag(tuple(comps), dag, comp_of)


def reachable_from(g: Digraph, sources: Iterable[int]) -> frozenset[int]:
    """Vertices on a directed path from any source, sources included."""
    seen = set(sources)
    missing = seen - g.vertices
    if missing:
        raise ValueError(f"sources not in graph: {sorted(missing)}")
    queue = deque(sorted(seen))
    succ = g.out_neighbours
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)
