"""Matroids as rank oracles, their minors and duals, and the matroid connectivity function."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .connectivity import (
    ConnectivitySystem,
    GroundSet,
    adheres,
    bit_indices,
    drop_bit,
    popcount,
)
from .errors import ConsistencyError, DomainError
from .gf2 import gf2_rank


class Matroid:
    """Base class: subclasses provide ``_rank`` on local masks.

    Ranks are memoized in a table of ``2**n`` entries filled on demand.
    """

    backing = "abstract"

    def __init__(self, ground: GroundSet, name: str = ""):
        if ground.size < 1:
            raise DomainError("matroids need a nonempty ground set")
        self.ground = ground
        self.name = name
        self._ranks = [-1] * (1 << ground.size)
        self._system: ConnectivitySystem | None = None
        self._minors: dict[tuple[int, bool], Matroid] = {}

    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or self.ground.size})"

    @property
    def n(self) -> int:
        return self.ground.size

    @property
    def full(self) -> int:
        return self.ground.full

    def rank(self, mask: int) -> int:
        self.ground.check(mask)
        r = self._ranks[mask]
        if r < 0:
            r = self._ranks[mask] = self._rank(mask)
        return r

    @property
    def rank_total(self) -> int:
        return self.rank(self.full)

    def rank_table(self) -> list[int]:
        return [self.rank(m) for m in range(self.full + 1)]

    def connectivity(self, mask: int) -> int:
        """λ_M(X) = r(X) + r(E∖X) − r(M) + 1."""
        return self.rank(mask) + self.rank(self.full ^ mask) - self.rank_total + 1

    def system(self) -> ConnectivitySystem:
        if self._system is None:
            self._system = ConnectivitySystem(self.ground, self.connectivity, name=f"K({self.name})")
        return self._system

    def delete(self, e: int) -> "Matroid":
        return self._minor(e, False)

    def contract(self, e: int) -> "Matroid":
        return self._minor(e, True)

    def _minor(self, e: int, contract: bool) -> "Matroid":
        key = (e, contract)
        if key not in self._minors:
            self._minors[key] = _minor(self, e, contract)
        return self._minors[key]

    def dual(self) -> "Matroid":
        if isinstance(self, DualMatroid):
            return self.primal
        return DualMatroid(self)

    def is_loop(self, e: int) -> bool:
        return self.rank(1 << self.ground.check_index(e)) == 0


class UniformMatroid(Matroid):
    backing = "uniform"

    def __init__(self, r: int, n: int):
        if not 0 <= r <= n:
            raise DomainError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
        super().__init__(GroundSet.of_size(n), name=f"U{r},{n}")
        self.r = r

    def _rank(self, mask: int) -> int:
        return min(popcount(mask), self.r)


class BinaryMatroid(Matroid):
    """Column matroid of a GF(2) matrix; each column is stored as an int over the rows."""

    backing = "gf2"

    def __init__(self, columns: Sequence[int], rows: int, labels: Sequence[str] | None = None, name: str = "gf2"):
        ground = GroundSet(tuple(labels)) if labels is not None else GroundSet.of_size(len(columns))
        super().__init__(ground, name=name)
        self.columns = tuple(columns)
        self.rows = rows

    @classmethod
    def from_rows(cls, matrix: Sequence[Sequence[int]], name: str = "gf2") -> "BinaryMatroid":
        if not matrix:
            raise DomainError("empty matrix")
        width = len(matrix[0])
        if any(len(row) != width for row in matrix):
            raise DomainError("ragged matrix rows")
        cols = []
        for j in range(width):
            c = 0
            for i, row in enumerate(matrix):
                if row[j] not in (0, 1):
                    raise DomainError(f"matrix entry {row[j]!r} is not a bit")
                if row[j]:
                    c |= 1 << i
            cols.append(c)
        return cls(cols, len(matrix), name=name)

    def _rank(self, mask: int) -> int:
        cols = self.columns
        return gf2_rank(cols[i] for i in bit_indices(mask))


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; edges (loops and parallels allowed) are the elements."""

    backing = "graphic"

    def __init__(self, num_vertices: int, edges: Sequence[tuple[int, int]], name: str = "graphic"):
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 0..{num_vertices - 1}")
        super().__init__(GroundSet.of_size(len(edges)), name=name)
        self.num_vertices = num_vertices
        self.edges = tuple((int(u), int(v)) for u, v in edges)

    def _rank(self, mask: int) -> int:
        # rank = |V(X)| - components(X) = number of merges in a union-find
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merges = 0
        for i in bit_indices(mask):
            u, v = self.edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merges += 1
        return merges


class MinorMatroid(Matroid):
    """M / C ∖ D for a root matroid; surviving labels are kept in their original order."""

    backing = "minor"

    def __init__(self, root: Matroid, keep: Sequence[int], contracted: int, name: str):
        ground = GroundSet(tuple(root.ground.labels[i] for i in keep))
        super().__init__(ground, name=name)
        self.root = root
        self.keep = tuple(keep)
        self.contracted = contracted
        self._base = root.rank(contracted)

    def _rank(self, mask: int) -> int:
        lifted = self.contracted
        for i in bit_indices(mask):
            lifted |= 1 << self.keep[i]
        return self.root.rank(lifted) - self._base


class DualMatroid(Matroid):
    backing = "dual"

    def __init__(self, primal: Matroid):
        super().__init__(primal.ground, name=f"dual({primal.name})")
        self.primal = primal

    def _rank(self, mask: int) -> int:
        p = self.primal
        return popcount(mask) - p.rank_total + p.rank(p.full ^ mask)


def _minor(M: Matroid, e: int, contract: bool) -> Matroid:
    M.ground.check_index(e)
    if M.n == 1:
        raise DomainError("cannot remove the last element of a matroid")
    label = M.ground.labels[e]
    op = "/" if contract else "\\"
    name = f"{M.name}{op}{label}"
    if isinstance(M, MinorMatroid):
        root, keep, contracted = M.root, list(M.keep), M.contracted
    else:
        root, keep, contracted = M, list(range(M.n)), 0
    gone = keep.pop(e)
    if contract:
        contracted |= 1 << gone
    return MinorMatroid(root, keep, contracted, name)


def rank_equal(M: Matroid, N: Matroid) -> bool:
    """Positional equality of rank functions (labels are ignored)."""
    return M.n == N.n and all(M.rank(m) == N.rank(m) for m in range(M.full + 1))


def rank_axiom_violations(M: Matroid) -> list[str]:
    """Exhaustive check of the rank axioms; empty when M is a matroid."""
    out = []
    r = M.rank_table()
    full = M.full
    if r[0] != 0:
        out.append("r(empty) != 0")
    for x in range(full + 1):
        if not 0 <= r[x] <= popcount(x):
            out.append(f"bounds at {x:#b}")
        for i in bit_indices(full ^ x):
            if r[x | 1 << i] < r[x]:
                out.append(f"monotonicity at {x:#b}+{i}")
    for x in range(full + 1):
        for y in range(x + 1, full + 1):
            if r[x & y] + r[x | y] > r[x] + r[y]:
                out.append(f"submodularity at {x:#b},{y:#b}")
    return out


class MinorKind(enum.Enum):
    DELETE = "delete"
    CONTRACT = "contract"


@dataclass(frozen=True)
class MinorOp:
    kind: MinorKind
    element: int

    def apply(self, M: Matroid) -> Matroid:
        if self.kind is MinorKind.DELETE:
            return M.delete(self.element)
        return M.contract(self.element)


class Verdict(enum.Enum):
    DELETE_ONLY = "DeleteOnly"
    CONTRACT_ONLY = "ContractOnly"
    BOTH = "Both"


def check_bc_inequality(M: Matroid, A: int, B: int, e: int) -> bool:
    """λ_{M∖e}(A) + λ_{M/e}(B) ≥ λ_M(A∩B) + λ_M(A∪B∪{e}) − 1, for e outside A and B."""
    M.ground.check(A)
    M.ground.check(B)
    M.ground.check_index(e)
    if (A | B) >> e & 1:
        raise DomainError("e must avoid A and B")
    lhs = M.delete(e).connectivity(drop_bit(A, e)) + M.contract(e).connectivity(drop_bit(B, e))
    rhs = M.connectivity(A & B) + M.connectivity(A | B | 1 << e) - 1
    return lhs >= rhs


def removal_adherence(M: Matroid, e: int) -> dict[MinorKind, bool]:
    """Whether K(M∖e) and K(M/e) adhere to K(M)."""
    M.ground.check_index(e)
    if M.n < 2:
        raise DomainError("need at least two elements")
    K = M.system()
    return {
        MinorKind.DELETE: adheres(M.delete(e).system(), K).holds,
        MinorKind.CONTRACT: adheres(M.contract(e).system(), K).holds,
    }


def safe_removal(M: Matroid, e: int) -> Verdict:
    """Which of deletion and contraction of ``e`` yield a system adhering to K(M)."""
    ok = removal_adherence(M, e)
    d, c = ok[MinorKind.DELETE], ok[MinorKind.CONTRACT]
    if d and c:
        return Verdict.BOTH
    if d:
        return Verdict.DELETE_ONLY
    if c:
        return Verdict.CONTRACT_ONLY
    raise ConsistencyError(f"neither M\\{e} nor M/{e} adheres to K(M) for {M!r}")


__all__ = [
    "BinaryMatroid",
    "DualMatroid",
    "GraphicMatroid",
    "Matroid",
    "MinorKind",
    "MinorMatroid",
    "MinorOp",
    "UniformMatroid",
    "Verdict",
    "check_bc_inequality",
    "rank_axiom_violations",
    "rank_equal",
    "removal_adherence",
    "safe_removal",
]
