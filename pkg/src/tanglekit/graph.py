"""Simple graphs over GF(2): cut-rank, local complementation, pivoting, vertex removal."""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .connectivity import ConnectivitySystem, GroundSet, adheres, bit_indices, drop_bit
from .errors import ConsistencyError, DomainError
from .gf2 import gf2_rank


class SimpleGraph:
    """Labeled simple graph; row ``v`` of ``adj`` is the neighbourhood bitmask of ``v``."""

    def __init__(self, vertices: GroundSet | int, adj: Sequence[int], name: str = ""):
        if isinstance(vertices, int):
            vertices = GroundSet.of_size(vertices)
        if vertices.size < 1:
            raise DomainError("graphs need at least one vertex")
        if len(adj) != vertices.size:
            raise DomainError("adjacency has the wrong number of rows")
        full = vertices.full
        for v, row in enumerate(adj):
            if row & ~full:
                raise DomainError(f"row {v} references vertices outside the graph")
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            for u in bit_indices(row):
                if not adj[u] >> v & 1:
                    raise DomainError(f"adjacency is not symmetric at ({u}, {v})")
        self.vertices = vertices
        self.adj = tuple(adj)
        self.name = name
        self._system: ConnectivitySystem | None = None

    @classmethod
    def from_edges(cls, n: int | GroundSet, edges: Iterable[tuple[int, int]], name: str = "") -> "SimpleGraph":
        ground = GroundSet.of_size(n) if isinstance(n, int) else n
        adj = [0] * ground.size
        for u, v in edges:
            ground.check_index(u)
            ground.check_index(v)
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise DomainError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(ground, adj, name=name)

    def __repr__(self) -> str:
        return f"SimpleGraph({self.name or self.n}, edges={self.edges()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.vertices, self.adj))

    @property
    def n(self) -> int:
        return self.vertices.size

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bit_indices(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bit_indices(self.adj[v])

    def cut_rank(self, mask: int) -> int:
        """GF(2) rank of the adjacency block between ``mask`` and its complement."""
        self.vertices.check(mask)
        outside = self.vertices.full ^ mask
        adj = self.adj
        return gf2_rank(adj[v] & outside for v in bit_indices(mask))

    def system(self) -> ConnectivitySystem:
        if self._system is None:
            self._system = ConnectivitySystem(self.vertices, self.cut_rank, name=f"CR({self.name})")
        return self._system

    def local_complement(self, v: int) -> "SimpleGraph":
        """G*v: complement the graph induced on the neighbourhood of v."""
        self.vertices.check_index(v)
        nbrs = self.adj[v]
        adj = list(self.adj)
        for u in bit_indices(nbrs):
            adj[u] ^= nbrs & ~(1 << u)
        return SimpleGraph(self.vertices, adj, name=f"{self.name}*{self.vertices.labels[v]}")

    def pivot(self, u: int, v: int) -> "SimpleGraph":
        """G×uv, computed as ((G*u)*v)*u."""
        self.vertices.check_index(u)
        self.vertices.check_index(v)
        if not self.has_edge(u, v):
            raise DomainError(f"pivot needs an edge, ({u}, {v}) is not one")
        g = self.local_complement(u).local_complement(v).local_complement(u)
        lab = self.vertices.labels
        g.name = f"{self.name}x{lab[u]}{lab[v]}"
        return g

    def delete_vertex(self, v: int) -> "SimpleGraph":
        self.vertices.check_index(v)
        if self.n == 1:
            raise DomainError("cannot delete the last vertex")
        adj = [drop_bit(row & ~(1 << v), v) for i, row in enumerate(self.adj) if i != v]
        return SimpleGraph(self.vertices.without(v), adj, name=f"{self.name}-{self.vertices.labels[v]}")


class VertexRemoval(enum.Enum):
    DELETE = "G-v"
    PIVOT_DELETE = "(G x uv)-v"
    LOCAL_DELETE = "(G*v)-v"


def _check_edge(G: SimpleGraph, v: int, u: int) -> None:
    G.vertices.check_index(v)
    G.vertices.check_index(u)
    if not G.has_edge(u, v):
        raise DomainError(f"({u}, {v}) is not an edge")


def removal_candidates(G: SimpleGraph, v: int, u: int) -> dict[VertexRemoval, SimpleGraph]:
    """The three ways to drop v: G−v, (G×uv)−v and (G*v)−v."""
    _check_edge(G, v, u)
    return {
        VertexRemoval.DELETE: G.delete_vertex(v),
        VertexRemoval.PIVOT_DELETE: G.pivot(u, v).delete_vertex(v),
        VertexRemoval.LOCAL_DELETE: G.local_complement(v).delete_vertex(v),
    }


def check_pm_inequality(G: SimpleGraph, A: int, B: int, v: int, u: int) -> bool:
    """ρ_{G−v}(A) + ρ_{(G×uv)−v}(B) ≥ ρ_G(A∩B) + ρ_G(A∪B∪{v}) − 1, for v outside A and B."""
    _check_edge(G, v, u)
    G.vertices.check(A)
    G.vertices.check(B)
    if (A | B) >> v & 1:
        raise DomainError("v must avoid A and B")
    lhs = G.delete_vertex(v).cut_rank(drop_bit(A, v)) + G.pivot(u, v).delete_vertex(v).cut_rank(drop_bit(B, v))
    rhs = G.cut_rank(A & B) + G.cut_rank(A | B | 1 << v) - 1
    return lhs >= rhs


def safe_vertex_removal_pm(G: SimpleGraph, v: int, u: int) -> frozenset[VertexRemoval]:
    """Which of CR(G−v), CR((G×uv)−v) adhere to CR(G); never empty."""
    cands = removal_candidates(G, v, u)
    K = G.system()
    ok = frozenset(
        kind
        for kind in (VertexRemoval.DELETE, VertexRemoval.PIVOT_DELETE)
        if adheres(cands[kind].system(), K).holds
    )
    if not ok:
        raise ConsistencyError(f"neither G-v nor (G x uv)-v adheres to CR(G) for v={v}, u={u}, {G!r}")
    return ok


def safe_vertex_removal_mm(G: SimpleGraph, v: int, u: int) -> frozenset[VertexRemoval]:
    """Which of the three removals leave every tangle of CR(G) unsplit; at least two."""
    from .tangles import split_free

    cands = removal_candidates(G, v, u)
    K = G.system()
    ok = frozenset(kind for kind, H in cands.items() if split_free(K, H.system()))
    if len(ok) < 2:
        raise ConsistencyError(f"only {sorted(k.name for k in ok)} are split-free for v={v}, u={u}, {G!r}")
    return ok


__all__ = [
    "SimpleGraph",
    "VertexRemoval",
    "check_pm_inequality",
    "removal_candidates",
    "safe_vertex_removal_mm",
    "safe_vertex_removal_pm",
]
