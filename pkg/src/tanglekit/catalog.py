"""Small named and seeded random instances for property sweeps."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .errors import DomainError
from .graph import SimpleGraph
from .matroid import BinaryMatroid, GraphicMatroid, Matroid, UniformMatroid

MAX_MATROID_TANGLE_N = 10
MAX_GRAPH_TANGLE_V = 6


def uniform(r: int, n: int) -> UniformMatroid:
    if not 0 <= r <= n <= 16:
        raise DomainError(f"need 0 <= r <= n <= 16, got r={r}, n={n}")
    return UniformMatroid(r, n)


def from_gf2(matrix, name: str = "gf2") -> BinaryMatroid:
    return BinaryMatroid.from_rows(matrix, name=name)


def fano() -> BinaryMatroid:
    # columns are the seven nonzero vectors of GF(2)^3
    cols = list(range(1, 8))
    return BinaryMatroid(cols, 3, name="Fano")


def graphic(graph: SimpleGraph | tuple[int, list[tuple[int, int]]], name: str | None = None) -> GraphicMatroid:
    """Cycle matroid of a simple graph, or of ``(num_vertices, edge_list)``."""
    if isinstance(graph, SimpleGraph):
        nv, edges = graph.n, graph.edges()
        name = name or f"M({graph.name})"
    else:
        nv, edges = graph
        name = name or "graphic"
    if not edges:
        raise DomainError("graphic matroid needs at least one edge")
    return GraphicMatroid(nv, edges, name=name)


def path(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"path{n}")


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"cycle{n}")


def complete(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, list(combinations(range(n), 2)), name=f"K{n}")


def prism() -> SimpleGraph:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return SimpleGraph.from_edges(6, edges, name="prism")


def two_triangles() -> SimpleGraph:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    return SimpleGraph.from_edges(6, edges, name="2triangle")


def random_gf2(rows: int, cols: int, seed: int) -> BinaryMatroid:
    if not (1 <= rows <= 16 and 1 <= cols <= 16):
        raise DomainError("random_gf2 needs 1 <= rows, cols <= 16")
    rng = random.Random(seed)
    columns = [rng.getrandbits(rows) for _ in range(cols)]
    return BinaryMatroid(columns, rows, name=f"gf2[{rows}x{cols}#{seed}]")


def random_graph(n: int, p: float, seed: int) -> SimpleGraph:
    if not 1 <= n <= 16 or not 0.0 <= p <= 1.0:
        raise DomainError("random_graph needs 1 <= n <= 16 and 0 <= p <= 1")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return SimpleGraph.from_edges(n, edges, name=f"G({n},{p}#{seed})")


def all_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every labeled simple graph on n vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if code >> i & 1]
        yield SimpleGraph.from_edges(n, edges, name=f"g{n}:{code}")


def graph_catalog(max_v: int = 5) -> Iterator[SimpleGraph]:
    for n in range(1, max_v + 1):
        yield from all_graphs(n)


def matroid_catalog(max_n: int = 8) -> list[Matroid]:
    """The default sweep set, restricted to at most ``max_n`` elements."""
    ms: list[Matroid] = [
        uniform(1, 3),
        uniform(2, 4),
        uniform(2, 5),
        uniform(3, 6),
        fano(),
        graphic(complete(3), name="M(triangle)"),
        graphic(complete(4), name="M(K4)"),
        graphic(two_triangles(), name="M(2triangle)"),
    ]
    return [m for m in ms if m.n <= max_n]


NAMED_GRAPHS = {
    "triangle": lambda: complete(3),
    "K4": lambda: complete(4),
    "K5": lambda: complete(5),
    "prism": prism,
    "2triangle": two_triangles,
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
}


def named_graph(name: str) -> SimpleGraph:
    """``path<n>``, ``cycle<n>``, ``C<n>``, ``K<n>`` or one of :data:`NAMED_GRAPHS`."""
    if name in NAMED_GRAPHS:
        return NAMED_GRAPHS[name]()
    for prefix, make in (("path", path), ("cycle", cycle), ("C", cycle), ("K", complete)):
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isdigit():
            return make(int(rest))
    raise DomainError(f"unknown graph name {name!r}")


__all__ = [
    "MAX_GRAPH_TANGLE_V",
    "MAX_MATROID_TANGLE_N",
    "NAMED_GRAPHS",
    "all_graphs",
    "complete",
    "cycle",
    "fano",
    "from_gf2",
    "graph_catalog",
    "graphic",
    "matroid_catalog",
    "named_graph",
    "path",
    "prism",
    "random_gf2",
    "random_graph",
    "two_triangles",
    "uniform",
]
