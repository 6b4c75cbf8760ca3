"""Brute-force reference implementations, written without the package.

Everything here works on plain vertex/edge collections so a bug in the
library cannot leak into the expected values.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations


def _index(vertices):
    verts = sorted(vertices)
    return verts, {v: i for i, v in enumerate(verts)}


def accessible(vertices, edges, roots) -> set:
    out = {v: [] for v in vertices}
    for u, w in edges:
        out[u].append(w)
    seen = set(roots)
    todo = list(roots)
    while todo:
        u = todo.pop()
        for w in out[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def dilations(vertices, edges, roots):
    """Yield every nonempty S with fewer in-neighbours than members.

    In-neighbours include one input per root in S. Subsets are built by
    bitmask so N(S) is one OR away from N(S minus its lowest member).
    """
    verts, idx = _index(vertices)
    n = len(verts)
    in_mask = [0] * n
    for u, w in edges:
        in_mask[idx[w]] |= 1 << idx[u]
    root_mask = sum(1 << idx[r] for r in roots)
    nbr = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        nbr[s] = nbr[s ^ low] | in_mask[low.bit_length() - 1]
        if bin(nbr[s]).count("1") + bin(s & root_mask).count("1") < bin(s).count("1"):
            yield frozenset(verts[i] for i in range(n) if s >> i & 1)


def has_dilation(vertices, edges, roots) -> bool:
    return next(dilations(vertices, edges, roots), None) is not None


def controllable(vertices, edges, roots) -> bool:
    """Accessibility by BFS plus exhaustive subset search for dilations."""
    if accessible(vertices, edges, roots) != set(vertices):
        return False
    return not has_dilation(vertices, edges, roots)


def single_edge_resilient(vertices, edges, roots) -> bool:
    edges = set(edges)
    if not controllable(vertices, edges, roots):
        return False
    return all(controllable(vertices, edges - {e}, roots) for e in edges if e[1] not in roots)


def max_matching_size(vertices, edges) -> int:
    """Largest set of edges with distinct tails and distinct heads, by search."""
    edges = sorted(set(edges))
    best = 0

    def go(i, tails, heads, size):
        nonlocal best
        if size + (len(edges) - i) <= best:
            return
        if i == len(edges):
            best = max(best, size)
            return
        u, w = edges[i]
        if u not in tails and w not in heads:
            go(i + 1, tails | {u}, heads | {w}, size + 1)
        go(i + 1, tails, heads, size)

    go(0, frozenset(), frozenset(), 0)
    return best


def sccs(vertices, edges) -> set[frozenset]:
    """Components from mutual reachability."""
    reach = {v: accessible(vertices, edges, [v]) for v in vertices}
    return {frozenset(w for w in vertices if w in reach[v] and v in reach[w]) for v in vertices}


def min_dedicated_roots(vertices, edges) -> int:
    verts = sorted(vertices)
    for k in range(len(verts) + 1):
        if any(controllable(verts, edges, c) for c in combinations(verts, k)):
            return k
    raise AssertionError("unreachable: all roots is always controllable")


def min_cover_size(sets) -> int:
    """Exact minimum number of elements hitting every set."""
    cands = sorted(set().union(*sets))
    for k in range(len(cands) + 1):
        for pick in combinations(cands, k):
            p = set(pick)
            if all(p & s for s in sets):
                return k
    raise AssertionError("unreachable")


# random instances ---------------------------------------------------------

def random_edges(rng: random.Random, d: int, p: float, loops: bool = False,
                 max_out: int | None = None) -> set:
    edges = set()
    for u in range(1, d + 1):
        targets = [w for w in range(1, d + 1) if (loops or w != u) and rng.random() < p]
        if max_out is not None:
            rng.shuffle(targets)
            targets = targets[:max_out]
        edges.update((u, w) for w in targets)
    return edges


def random_resilient_pair(rng: random.Random, d_range=(3, 8), p_range=(0.3, 0.7)):
    """Random (vertices, edges, roots) that is single-edge resilient.

    Roots start as a random small set and grow one at a time until the
    brute-force check passes; all-roots always passes.
    """
    while True:
        d = rng.randint(*d_range)
        verts = list(range(1, d + 1))
        edges = random_edges(rng, d, rng.uniform(*p_range))
        roots = set(rng.sample(verts, rng.randint(1, 2)))
        while not single_edge_resilient(verts, edges, roots):
            rest = [v for v in verts if v not in roots]
            roots.add(rng.choice(rest))
        if len(roots) < d:
            return verts, edges, roots


def is_perm_matchable(vertices, edges) -> bool:
    """Tiny-graph check that some permutation is covered by edges."""
    verts = sorted(vertices)
    es = set(edges)
    return any(all((p, v) in es for v, p in zip(verts, perm)) for perm in permutations(verts))
