"""Topology and subgraph file formats, bundled datasets, DOT export.

Topology file::

    # comment
    14              vertex count
    undirected      or: directed
    1 2             one edge per line

Subgraph file: an optional ``directed``/``undirected`` line, then blocks of
``vertices v1 v2 ...`` optionally followed by ``edges u-v u-v ...``. A block
without an ``edges`` line means the induced subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal

from .graph import Digraph, Edge, build_digraph
from .synthesis import SubgraphSpec

BUILTIN_TOPOLOGIES = ("ieee14", "toy5")
BUILTIN_SUBGRAPHS = ("ieee14_paper",)


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


@dataclass(frozen=True)
class TopologyFile:
    vertex_count: int
    mode: Literal["directed", "undirected"]
    pairs: tuple[Edge, ...]
    name: str = "<text>"

    @property
    def graph(self) -> Digraph:
        return build_digraph(self.vertex_count, self.pairs, self.mode == "undirected")


def parse_topology(text: str, name: str = "<text>") -> TopologyFile:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError("expected a vertex count line and a directed|undirected line", source=name)
    no, head = lines[0]
    try:
        d = int(head)
    except ValueError:
        raise FormatError(f"vertex count must be an integer, got {head!r}", no, name) from None
    if d < 1:
        raise FormatError("vertex count must be positive", no, name)
    no, mode = lines[1]
    if mode not in ("directed", "undirected"):
        raise FormatError(f"expected 'directed' or 'undirected', got {mode!r}", no, name)
    pairs = []
    for no, line in lines[2:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {line!r}", no, name)
        try:
            u, w = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex in {line!r}", no, name) from None
        for x in (u, w):
            if not 1 <= x <= d:
                raise FormatError(f"vertex {x} out of range 1..{d}", no, name)
        pairs.append((u, w))
    return TopologyFile(d, mode, tuple(pairs), name)  # type: ignore[arg-type]


def _builtin_text(filename: str) -> str:
    return resources.files("structctl").joinpath("data", filename).read_text()


def read_topology(source: str | Path) -> TopologyFile:
    """Parse a topology file, or a bundled dataset by name (``ieee14``, ``toy5``)."""
    path = Path(source)
    if path.is_file():
        return parse_topology(path.read_text(), str(path))
    if str(source) in BUILTIN_TOPOLOGIES:
        return parse_topology(_builtin_text(f"{source}.topo"), str(source))
    raise FormatError(f"no such file or builtin topology: {source}")


def load_topology(source: str | Path) -> Digraph:
    return read_topology(source).graph


def dump_topology(g: Digraph) -> str:
    """Serialize as a directed topology file; requires vertices ``1..d``."""
    d = g.vertex_count
    if g.vertices != frozenset(range(1, d + 1)):
        raise ValueError("topology files need vertices numbered 1..d")
    lines = [str(d), "directed"] + [f"{u} {w}" for u, w in g.sorted_edges]
    return "\n".join(lines) + "\n"


def parse_subgraphs(text: str, name: str = "<text>") -> list[SubgraphSpec]:
    lines = _content_lines(text)
    undirected = False
    if lines and lines[0][1] in ("directed", "undirected"):
        undirected = lines[0][1] == "undirected"
        lines = lines[1:]
    specs: list[tuple[list[int], list[Edge] | None]] = []
    for no, line in lines:
        key, _, rest = line.partition(" ")
        if key == "vertices":
            try:
                verts = [int(t) for t in rest.split()]
            except ValueError:
                raise FormatError("non-integer vertex", no, name) from None
            if not verts:
                raise FormatError("empty vertex list", no, name)
            specs.append((verts, None))
        elif key == "edges":
            if not specs:
                raise FormatError("'edges' before any 'vertices' line", no, name)
            verts, edges = specs[-1]
            edges = list(edges or [])
            for tok in rest.split():
                a, sep, b = tok.partition("-")
                if not sep:
                    raise FormatError(f"edge {tok!r} must look like u-v", no, name)
                try:
                    u, w = int(a), int(b)
                except ValueError:
                    raise FormatError(f"non-integer vertex in {tok!r}", no, name) from None
                edges.append((u, w))
                if undirected:
                    edges.append((w, u))
            specs[-1] = (verts, edges)
        else:
            raise FormatError(f"unknown directive {key!r}", no, name)
    if not specs:
        raise FormatError("no subgraphs listed", source=name)
    return [(v, e) for v, e in specs]


def load_subgraphs(source: str | Path) -> list[SubgraphSpec]:
    path = Path(source)
    if path.is_file():
        return parse_subgraphs(path.read_text(), str(path))
    stem = str(source).removesuffix(".subgraphs")
    if stem in BUILTIN_SUBGRAPHS:
        return parse_subgraphs(_builtin_text(f"{stem}.subgraphs"), stem)
    raise FormatError(f"no such file or builtin subgraph list: {source}")


def export_dot(g: Digraph, roots: Iterable[int] = (), critical: Iterable[Edge] = (),
               additional_roots: Iterable[int] = (), added_vertices: Iterable[int] = (),
               added_edges: Iterable[Edge] = (), name: str = "G") -> str:
    """DOT text: roots filled, extra roots dashed, critical edges bold blue,
    vertices and edges restored during augmentation dashed green."""
    roots = frozenset(roots)
    extra = frozenset(additional_roots)
    late = frozenset(added_vertices)
    crit = frozenset(critical)
    late_edges = frozenset(added_edges)

    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in g.sorted_vertices:
        attrs = []
        if v in extra:
            attrs += ['style="filled,dashed"', "fillcolor=lightgray", "root=true"]
        elif v in roots:
            attrs += ["style=filled", "fillcolor=yellow", "root=true"]
        if v in late:
            attrs += ["color=green"]
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, w in g.sorted_edges:
        attrs = []
        if (u, w) in crit:
            attrs += ["color=blue", "penwidth=2", "critical=true"]
        if (u, w) in late_edges:
            attrs += ["style=dashed", "color=green"] if (u, w) not in crit else ["style=dashed"]
        lines.append(f"  {u} -> {w}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
