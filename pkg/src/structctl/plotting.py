"""Matplotlib rendering of a digraph with its roots and critical edges."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .graph import Digraph, Edge  # noqa: E402

ROOT_COLOR = "#f5d742"
EXTRA_ROOT_COLOR = "#c8c8c8"
CRITICAL_COLOR = "#1f4fd1"


def circular_layout(g: Digraph) -> dict[int, tuple[float, float]]:
    verts = g.sorted_vertices
    n = max(len(verts), 1)
    return {
        v: (math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n))
        for i, v in enumerate(verts)
    }


def draw_graph(ax, g: Digraph, roots: Iterable[int] = (), additional_roots: Iterable[int] = (),
               critical: Iterable[Edge] = (), pos: Mapping[int, tuple[float, float]] | None = None):
    """Draw ``g`` on ``ax``; reciprocal edges are curved apart so both show."""
    roots = frozenset(roots)
    extra = frozenset(additional_roots)
    crit = frozenset(critical)
    pos = pos or circular_layout(g)

    for u, w in g.sorted_edges:
        if u == w:
            continue
        bend = 0.15 if (w, u) in g.edges else 0.0
        is_crit = (u, w) in crit
        ax.add_patch(FancyArrowPatch(
            pos[u], pos[w], arrowstyle="-|>", mutation_scale=10,
            connectionstyle=f"arc3,rad={bend}", shrinkA=11, shrinkB=11,
            color=CRITICAL_COLOR if is_crit else "0.55", lw=2.0 if is_crit else 0.8,
            zorder=1,
        ))
    for v in g.sorted_vertices:
        x, y = pos[v]
        face = EXTRA_ROOT_COLOR if v in extra else ROOT_COLOR if v in roots else "white"
        ax.scatter([x], [y], s=380, c=face, edgecolors="k",
                   linestyles="--" if v in extra else "-", zorder=2)
        ax.text(x, y, str(v), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.margins(0.12)
    return ax


def render_graph(path: str | Path, g: Digraph, roots: Iterable[int] = (),
                 additional_roots: Iterable[int] = (), critical: Iterable[Edge] = (),
                 title: str | None = None) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 5))
    draw_graph(ax, g, roots, additional_roots, critical)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
