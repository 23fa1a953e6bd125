"""Partial branch-decompositions: widths, conformity, and the subset DP that searches for them.

Also holds the checks built on top of them: unique tangle leaf, weakly branched and
branched sets, remapping onto a leaf, and the duality between tangles and
conforming decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

from .connectivity import ConnectivitySystem, bit_indices, kappa, low_sets
from .errors import ConsistencyError, DomainError
from .tangles import Tangle, enumerate_tangles, extends_to_tangle, is_k_entangled


@dataclass(frozen=True)
class CubicTree:
    """Unrooted tree with all degrees 1 or 3; one-vertex and one-edge trees are allowed."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        n = self.num_vertices
        if n < 1:
            raise DomainError("a tree needs at least one vertex")
        if len(edges) != n - 1:
            raise DomainError("a tree on n vertices has n-1 edges")
        deg = [0] * n
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise DomainError(f"bad tree edge ({u}, {v})")
            deg[u] += 1
            deg[v] += 1
            ru, rv = find(u), find(v)
            if ru == rv:
                raise DomainError("tree edges contain a cycle")
            parent[ru] = rv
        if n > 1 and any(d not in (1, 3) for d in deg):
            raise DomainError(f"tree is not cubic: degrees {deg}")

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def leaves(self) -> list[int]:
        if self.num_vertices == 1:
            return [0]
        return [v for v in range(self.num_vertices) if self.degree(v) == 1]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class PartialBranchDecomposition:
    """A cubic tree with every ground-set element assigned to a leaf (``assign[i]`` is a vertex)."""

    tree: CubicTree
    assign: tuple[int, ...]
    _leaves: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(int(a) for a in self.assign))
        leaves = frozenset(self.tree.leaves())
        object.__setattr__(self, "_leaves", leaves)
        for i, a in enumerate(self.assign):
            if a not in leaves:
                raise DomainError(f"element {i} is mapped to {a}, which is not a leaf")

    @property
    def n(self) -> int:
        return len(self.assign)

    def leaves(self) -> list[int]:
        return sorted(self._leaves)

    def displayed(self, leaf: int) -> int:
        if leaf not in self._leaves:
            raise DomainError(f"vertex {leaf} is not a leaf")
        mask = 0
        for i, a in enumerate(self.assign):
            if a == leaf:
                mask |= 1 << i
        return mask

    def edge_sides(self) -> dict[tuple[int, int], int]:
        """For each edge (u, v), the elements mapped to the u side of T − uv."""
        tree = self.tree
        adj = tree.adjacency()
        at = [0] * tree.num_vertices
        for i, a in enumerate(self.assign):
            at[a] |= 1 << i
        # subtree masks for a DFS rooted at vertex 0
        order, parent = [0], [-1] * tree.num_vertices
        seen = [False] * tree.num_vertices
        seen[0] = True
        for v in order:
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    order.append(w)
        sub = at[:]
        for v in reversed(order[1:]):
            sub[parent[v]] |= sub[v]
        full = (1 << self.n) - 1
        sides = {}
        for u, v in tree.edges:
            if parent[v] == u:
                sides[(u, v)] = full ^ sub[v]
            else:
                sides[(u, v)] = sub[u]
        return sides


def displayed(D: PartialBranchDecomposition, leaf: int) -> int:
    return D.displayed(leaf)


def width(K: ConnectivitySystem, D: PartialBranchDecomposition) -> tuple[int, dict[tuple[int, int], int]]:
    """Overall width and per-edge widths; an edgeless tree has width λ(∅)."""
    if D.n != K.n:
        raise DomainError("decomposition and system have different ground sets")
    widths = {e: K.lam(a) for e, a in D.edge_sides().items()}
    return (max(widths.values()) if widths else K.lam(0)), widths


def conforms(D: PartialBranchDecomposition, S: Sequence[int]) -> bool:
    """Every leaf displays a subset of some member of S."""
    for leaf in D.leaves():
        shown = D.displayed(leaf)
        if shown and not any(shown & ~s == 0 for s in S):
            return False
    return True


def _search(
    K: ConnectivitySystem,
    leaf_ok: Callable[[int], bool],
    allowed: Callable[[int], bool] | None,
    bound: int,
) -> PartialBranchDecomposition | None:
    """Subset DP: X is buildable if it is a leaf block, or splits into two buildable
    parts whose connectivities are at most ``bound``. O(3^n)."""
    lam = K.table()
    full = K.full
    if leaf_ok(full):
        if lam[0] > bound:
            return None
        return PartialBranchDecomposition(CubicTree(1, ()), (0,) * K.n)
    LEAF = -1
    how = [0] * (full + 1)  # 0 unbuildable, LEAF, or the least first part of a split
    for x in range(1, full + 1):
        if allowed is not None and not allowed(x):
            continue
        if leaf_ok(x):
            how[x] = LEAF
            continue
        sub = (0 - x) & x  # lowest set bit: least nonempty submask
        while sub != x:
            rest = x ^ sub
            if how[sub] and how[rest] and lam[sub] <= bound and lam[rest] <= bound:
                how[x] = sub
                break
            sub = (sub - x) & x
    if not how[full] or how[full] == LEAF:
        return None

    edges: list[tuple[int, int]] = []
    assign = [0] * K.n
    count = 0

    def build(x: int) -> int:
        nonlocal count
        v = count
        count += 1
        if how[x] == LEAF:
            for i in bit_indices(x):
                assign[i] = v
            return v
        a = how[x]
        edges.append((v, build(a)))
        edges.append((v, build(x ^ a)))
        return v

    a = how[full]
    r1 = build(a)
    r2 = build(full ^ a)
    edges.append((r1, r2))
    return PartialBranchDecomposition(CubicTree(count, tuple(edges)), tuple(assign))


def _down_closure(S: Sequence[int], n: int) -> bytearray:
    size = 1 << n
    ok = bytearray(size)
    for s in S:
        ok[s] = 1
    for i in range(n):
        bit = 1 << i
        for x in range(size):
            if not x & bit and ok[x | bit]:
                ok[x] = 1
    return ok


def search_conforming(K: ConnectivitySystem, S: Sequence[int], bound: int) -> PartialBranchDecomposition | None:
    """A decomposition of width at most ``bound`` conforming to S, or None.

    Splits are tried least-first-part first, so the witness is deterministic.
    """
    union = 0
    for s in S:
        K.ground.check(s)
        union |= s
    if union != K.full:
        raise DomainError("S does not cover the ground set")
    inside = _down_closure(S, K.n)
    return _search(K, inside.__getitem__, None, bound)


def branch_width(K: ConnectivitySystem) -> int:
    """Least width of a decomposition whose leaves display at most one element."""
    if K.n < 1:
        raise DomainError("branch-width needs a nonempty ground set")
    singletons = [1 << i for i in range(K.n)]
    lo, hi = K.lam(0), K.max_value()
    while lo < hi:
        mid = (lo + hi) // 2
        if search_conforming(K, singletons, mid) is None:
            lo = mid + 1
        else:
            hi = mid
    return lo


def duality_check(K: ConnectivitySystem, S: Sequence[int], k: int) -> bool:
    """Exactly one of: S extends to an order-k tangle; a width-(k−1) decomposition conforms to S."""
    has_tangle = extends_to_tangle(K, S, k)
    has_decomposition = search_conforming(K, S, k - 1) is not None
    return has_tangle != has_decomposition


def tangle_leaf(K: ConnectivitySystem, T: Tangle, D: PartialBranchDecomposition) -> int:
    """The unique leaf of D displaying a set outside T (D must have width < order of T)."""
    w, _ = width(K, D)
    if w > T.order - 1:
        raise DomainError(f"decomposition width {w} exceeds tangle order minus one ({T.order - 1})")
    outside = [leaf for leaf in D.leaves() if D.displayed(leaf) not in T]
    if len(outside) != 1:
        raise ConsistencyError(f"expected exactly one leaf outside the tangle, found {outside}")
    return outside[0]


def is_weakly_branched(K: ConnectivitySystem, X: int, k: int) -> bool:
    K.ground.check(X)
    if K.lam(X) > k:
        return False
    family = [K.full ^ X] + [1 << i for i in bit_indices(X)]
    return search_conforming(K, family, k) is not None


def branched_decomposition(K: ConnectivitySystem, X: int, k: int) -> PartialBranchDecomposition | None:
    """Width-≤k decomposition with E∖X on one leaf and other leaves showing ∅ or one element of X."""
    K.ground.check(X)
    rest = K.full ^ X

    def leaf_ok(z: int) -> bool:
        return z == rest or (z & rest == 0 and z & (z - 1) == 0)

    def allowed(z: int) -> bool:
        return z & rest in (0, rest)

    D = _search(K, leaf_ok, allowed, k)
    if D is None or rest:
        return D
    # E∖X is empty, so it needs an empty leaf of its own: hang one off a subdivided edge
    tree = D.tree
    if tree.num_vertices == 1:
        if K.lam(0) > k:
            return None
        return PartialBranchDecomposition(CubicTree(2, ((0, 1),)), D.assign)
    (a, b), others = tree.edges[0], tree.edges[1:]
    mid, leaf = tree.num_vertices, tree.num_vertices + 1
    new_edges = others + ((a, mid), (mid, b), (mid, leaf))
    if K.lam(0) > k:
        return None
    return PartialBranchDecomposition(CubicTree(tree.num_vertices + 2, new_edges), D.assign)


def is_branched(K: ConnectivitySystem, X: int, k: int) -> bool:
    return branched_decomposition(K, X, k) is not None


def remap_to_leaf(K: ConnectivitySystem, D: PartialBranchDecomposition, r: int, X: int) -> PartialBranchDecomposition:
    """Send every element outside X to leaf r, keeping X where it is.

    When λ(X) equals κ(X, Y), with Y the set r displays, no edge gets wider; a wider
    edge in that case raises :class:`ConsistencyError`.
    """
    Y = D.displayed(r)
    K.ground.check(X)
    if X & Y:
        raise DomainError("X must avoid the set displayed by r")
    assign = tuple(D.assign[i] if X >> i & 1 else r for i in range(D.n))
    D2 = PartialBranchDecomposition(D.tree, assign)
    if K.lam(X) == kappa(K, X, Y):
        _, before = width(K, D)
        _, after = width(K, D2)
        worse = [e for e in before if after[e] > before[e]]
        if worse:
            raise ConsistencyError(f"remapping widened edges {worse}")
    return D2


def _unique_tangle(K: ConnectivitySystem, k: int) -> Tangle:
    if not is_k_entangled(K, k):
        raise DomainError(f"system is not {k}-entangled")
    ts = enumerate_tangles(K, k)
    if not ts:
        raise DomainError(f"system has no tangle of order {k}")
    return ts[0]


def check_branched_lemma(K: ConnectivitySystem, k: int) -> bool:
    """In a k-entangled system with order-k tangle T: X ∈ T iff X is weakly λ(X)-branched."""
    T = _unique_tangle(K, k)
    return all((X in T) == is_weakly_branched(K, X, K.lam(X)) for X in low_sets(K, k))


def check_easy_branched(K: ConnectivitySystem) -> bool:
    """Every weakly (t−1)-branched set lies in every tangle of order t, for every t."""
    t = 1
    while True:
        ts = enumerate_tangles(K, t)
        if not ts:
            return True
        for X in low_sets(K, t):
            if is_weakly_branched(K, X, t - 1) and any(X not in T for T in ts):
                return False
        t += 1


def is_linked(K: ConnectivitySystem, T: Tangle, X: int) -> bool:
    """X ∈ T and no member of T containing X has smaller connectivity."""
    if X not in T:
        return False
    lx = K.lam(X)
    return not any(Y & X == X and K.lam(Y) < lx for Y in T.members)


def check_branched2(K: ConnectivitySystem, k: int) -> bool:
    """Every T-linked member X of the unique order-k tangle is λ(X)-branched."""
    T = _unique_tangle(K, k)
    return all(is_branched(K, X, K.lam(X)) for X in T.members if is_linked(K, T, X))


def caterpillar(leaves: int) -> CubicTree:
    """The cubic tree with the given number of leaves whose internal vertices form a path.

    Leaves are 0..L−1. For five or fewer leaves this is the only cubic tree shape.
    """
    if leaves < 1:
        raise DomainError("need at least one leaf")
    if leaves == 1:
        return CubicTree(1, ())
    if leaves == 2:
        return CubicTree(2, ((0, 1),))
    if leaves == 3:
        return CubicTree(4, ((0, 3), (1, 3), (2, 3)))
    spine = list(range(leaves, 2 * leaves - 2))
    edges = [(0, spine[0]), (1, spine[0])]
    for j in range(1, len(spine)):
        edges.append((spine[j - 1], spine[j]))
    for j in range(1, len(spine) - 1):
        edges.append((j + 1, spine[j]))
    edges += [(leaves - 2, spine[-1]), (leaves - 1, spine[-1])]
    return CubicTree(2 * leaves - 2, tuple(edges))


def all_decompositions(n: int, max_leaves: int = 5) -> Iterator[PartialBranchDecomposition]:
    """Every assignment of n elements to the leaves of every cubic tree with at most
    ``max_leaves`` leaves (brute force; leaves may stay empty)."""
    if max_leaves > 5:
        raise DomainError("brute-force trees are only generated up to five leaves")
    for L in range(1, max_leaves + 1):
        tree = caterpillar(L)
        leaves = tree.leaves()
        for f in product(leaves, repeat=n):
            yield PartialBranchDecomposition(tree, f)


def decomposition_to_json(D: PartialBranchDecomposition, K: ConnectivitySystem) -> dict:
    _, widths = width(K, D)
    return {
        "tree": [[u, v] for u, v in D.tree.edges],
        "assign": {K.ground.labels[i]: a for i, a in enumerate(D.assign)},
        "widths": {f"{u}-{v}": w for (u, v), w in widths.items()},
    }


__all__ = [
    "CubicTree",
    "PartialBranchDecomposition",
    "all_decompositions",
    "branch_width",
    "branched_decomposition",
    "caterpillar",
    "check_branched2",
    "check_branched_lemma",
    "check_easy_branched",
    "conforms",
    "decomposition_to_json",
    "displayed",
    "duality_check",
    "is_branched",
    "is_linked",
    "is_weakly_branched",
    "remap_to_leaf",
    "search_conforming",
    "tangle_leaf",
    "width",
]
