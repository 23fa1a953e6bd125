"""Exhaustive property sweeps over the instance catalog.

Every suite walks a scope of catalog instances (matroids with at most ``max_n``
elements, labeled graphs with at most ``max_v`` vertices) and records each
counterexample it meets. A suite passes iff it records none.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator

from . import catalog
from .branch import (
    PartialBranchDecomposition,
    all_decompositions,
    branch_width,
    check_branched2,
    check_branched_lemma,
    check_easy_branched,
    conforms,
    duality_check,
    is_weakly_branched,
    branched_decomposition,
    remap_to_leaf,
    search_conforming,
    tangle_leaf,
    width,
)
from .connectivity import (
    ConnectivitySystem,
    adheres,
    bit_indices,
    dominates,
    drop_bit,
    low_sets,
    submasks,
    verify_axioms,
)
from .errors import ConsistencyError
from .graph import SimpleGraph, VertexRemoval, removal_candidates
from .matroid import Matroid, MinorKind, check_bc_inequality, rank_axiom_violations, removal_adherence
from .tangles import (
    enumerate_tangles,
    enumerate_tangles_reference,
    extends_to_tangle,
    is_k_entangled,
    is_tangle,
    max_tangle_order,
    split_free,
)

MAX_RECORDED = 25


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def fail(self, **witness) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_RECORDED:
            self.violations.append(witness)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": self.violations,
        }
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def matroids(max_n: int) -> list[Matroid]:
    return catalog.matroid_catalog(max_n)


def graphs(max_v: int) -> Iterator[SimpleGraph]:
    return catalog.graph_catalog(max_v)


def systems(max_n: int, max_v: int) -> Iterator[tuple[str, ConnectivitySystem]]:
    for M in matroids(max_n):
        yield M.name, M.system()
    for G in graphs(max_v):
        yield G.name, G.system()


def _canonical_table(K: ConnectivitySystem) -> tuple[int, ...]:
    lam = K.table()
    n = K.n
    best = None
    for perm in permutations(range(n)):
        img = [0] * (1 << n)
        for m in range(1 << n):
            t = 0
            for i in bit_indices(m):
                t |= 1 << perm[i]
            img[t] = lam[m]
        key = tuple(img)
        if best is None or key < best:
            best = key
    return best


def distinct_systems(max_n: int, max_v: int) -> Iterator[tuple[str, ConnectivitySystem]]:
    """The systems of :func:`systems`, one per isomorphism class of connectivity function.

    Suites whose checks quantify over every labeled subset, decomposition and
    tangle give the same verdict on isomorphic systems, so this is exact for them.
    """
    seen: set[tuple[int, ...]] = set()
    raw: set[tuple[int, ...]] = set()
    for name, K in systems(max_n, max_v):
        t = tuple(K.table())
        if t in raw:
            continue
        raw.add(t)
        key = _canonical_table(K)
        if key in seen:
            continue
        seen.add(key)
        yield name, K


def incident_pairs(G: SimpleGraph) -> Iterator[tuple[int, int]]:
    """Every (v, u) with uv an edge."""
    for v in range(G.n):
        for u in G.neighbors(v):
            yield v, u


def _matroid_removals(M: Matroid, e: int) -> dict[str, ConnectivitySystem]:
    return {"delete": M.delete(e).system(), "contract": M.contract(e).system()}


def _graph_removals(G: SimpleGraph, v: int, u: int) -> dict[VertexRemoval, ConnectivitySystem]:
    return {kind: H.system() for kind, H in removal_candidates(G, v, u).items()}


# -- axioms and inequalities -------------------------------------------------


def sweep_axioms(max_n: int = 8, max_v: int = 5) -> SweepResult:
    res = SweepResult("axioms")
    for M in matroids(max_n):
        res.checked += 1
        for msg in rank_axiom_violations(M)[:3]:
            res.fail(instance=M.name, rank_axiom=msg)
    for name, K in systems(max_n, max_v):
        res.checked += 1
        bad = verify_axioms(K, limit=3)
        for v in bad:
            res.fail(instance=name, violation=str(v))
        lam = K.table()
        if lam[0] != lam[K.full] or lam[0] > min(lam):
            res.fail(instance=name, violation="empty set is not a minimum")
    return res


def sweep_bc_ineq(max_n: int = 6, max_v: int = 0) -> SweepResult:
    res = SweepResult("bc-ineq")
    for M in matroids(max_n):
        full = M.full
        for e in range(M.n):
            lam_d = M.delete(e).system().table()
            lam_c = M.contract(e).system().table()
            lam = M.system().table()
            rest = full ^ (1 << e)
            subs = [(a, drop_bit(a, e)) for a in submasks(rest)]
            for A, a in subs:
                for B, b in subs:
                    res.checked += 1
                    if lam_d[a] + lam_c[b] < lam[A & B] + lam[A | B | 1 << e] - 1:
                        res.fail(instance=M.name, A=A, B=B, e=e)
    # the op itself, on a sample, so the fast path above cannot drift from it
    for M in matroids(min(max_n, 5)):
        for e in range(M.n):
            rest = M.full ^ (1 << e)
            for A in submasks(rest):
                if not check_bc_inequality(M, A, rest ^ A, e):
                    res.fail(instance=M.name, A=A, B=rest ^ A, e=e, path="op")
    return res


def sweep_pm_ineq(max_n: int = 0, max_v: int = 5) -> SweepResult:
    res = SweepResult("pm-ineq")
    for G in graphs(max_v):
        rho = G.system().table()
        for v, u in incident_pairs(G):
            rd = G.delete_vertex(v).system().table()
            rp = G.pivot(u, v).delete_vertex(v).system().table()
            rest = G.vertices.full ^ (1 << v)
            subs = [(a, drop_bit(a, v)) for a in submasks(rest)]
            for A, a in subs:
                for B, b in subs:
                    res.checked += 1
                    if rd[a] + rp[b] < rho[A & B] + rho[A | B | 1 << v] - 1:
                        res.fail(instance=G.name, A=A, B=B, v=v, u=u)
    return res


def sweep_pivot_invariance(max_n: int = 0, max_v: int = 5) -> SweepResult:
    res = SweepResult("pivot-invariance")
    for G in graphs(max_v):
        rho = G.system().table()
        for v in range(G.n):
            res.checked += 1
            lc = G.local_complement(v)
            if lc.system().table() != rho:
                res.fail(instance=G.name, local_complement=v)
            if lc.local_complement(v) != G:
                res.fail(instance=G.name, involution=v)
        for u, v in G.edges():
            res.checked += 1
            p = G.pivot(u, v)
            if p.system().table() != rho:
                res.fail(instance=G.name, pivot=(u, v), issue="cut-rank changed")
            if p != G.local_complement(v).local_complement(u).local_complement(v):
                res.fail(instance=G.name, pivot=(u, v), issue="pivot identity")
    return res


# -- adherence and splitting -------------------------------------------------


def sweep_bixby(max_n: int = 8, max_v: int = 0) -> SweepResult:
    res = SweepResult("bixby")
    for M in matroids(max_n):
        for e in range(M.n):
            res.checked += 1
            ok = removal_adherence(M, e)
            if not any(ok.values()):
                res.fail(instance=M.name, e=e)
    return res


def sweep_pm_bixby(max_n: int = 0, max_v: int = 5) -> SweepResult:
    res = SweepResult("pm-bixby")
    for G in graphs(max_v):
        K = G.system()
        for v, u in incident_pairs(G):
            res.checked += 1
            c = _graph_removals(G, v, u)
            if not (adheres(c[VertexRemoval.DELETE], K) or adheres(c[VertexRemoval.PIVOT_DELETE], K)):
                res.fail(instance=G.name, v=v, u=u)
    return res


def _removal_pairs(max_n: int, max_v: int) -> Iterator[tuple[str, ConnectivitySystem, ConnectivitySystem]]:
    for M in matroids(max_n):
        K = M.system()
        for e in range(M.n):
            for kind, K0 in _matroid_removals(M, e).items():
                yield f"{M.name} {kind} {e}", K, K0
    for G in graphs(max_v):
        if G.n < 2:
            continue
        K = G.system()
        for v in range(G.n):
            yield f"{G.name} {VertexRemoval.DELETE.value} v={v}", K, G.delete_vertex(v).system()
            yield f"{G.name} {VertexRemoval.LOCAL_DELETE.value} v={v}", K, G.local_complement(v).delete_vertex(v).system()
            for u in G.neighbors(v):
                yield f"{G.name} {VertexRemoval.PIVOT_DELETE.value} v={v} u={u}", K, G.pivot(u, v).delete_vertex(v).system()


def sweep_unsplit(max_n: int = 8, max_v: int = 5) -> SweepResult:
    res = SweepResult("unsplit")
    for label, K, K0 in _removal_pairs(max_n, max_v):
        res.checked += 1
        if not dominates(K, K0):
            res.fail(instance=label, issue="not dominated")
        elif adheres(K0, K) and not split_free(K, K0):
            res.fail(instance=label, issue="adheres but splits")
    return res


def sweep_main(max_n: int = 7, max_v: int = 0) -> SweepResult:
    res = SweepResult("main")
    for M in matroids(max_n):
        K = M.system()
        for e in range(M.n):
            res.checked += 1
            if not any(split_free(K, K0) for K0 in _matroid_removals(M, e).values()):
                res.fail(instance=M.name, e=e)
    return res


def sweep_pm(max_n: int = 0, max_v: int = 5) -> SweepResult:
    res = SweepResult("pm")
    for G in graphs(max_v):
        K = G.system()
        for v, u in incident_pairs(G):
            res.checked += 1
            c = _graph_removals(G, v, u)
            if not (split_free(K, c[VertexRemoval.DELETE]) or split_free(K, c[VertexRemoval.PIVOT_DELETE])):
                res.fail(instance=G.name, v=v, u=u)
    return res


def sweep_mm(max_n: int = 0, max_v: int = 5) -> SweepResult:
    res = SweepResult("mm")
    for G in graphs(max_v):
        K = G.system()
        for v, u in incident_pairs(G):
            res.checked += 1
            free = [kind.name for kind, H in _graph_removals(G, v, u).items() if split_free(K, H)]
            if len(free) < 2:
                res.fail(instance=G.name, v=v, u=u, split_free=free)
    return res


def sweep_entangled(max_n: int = 7, max_v: int = 0) -> SweepResult:
    res = SweepResult("entangled")
    for M in matroids(max_n):
        K = M.system()
        top = max_tangle_order(K)
        for k in range(1, top + 2):
            if not is_k_entangled(K, k):
                continue
            for e in range(M.n):
                res.checked += 1
                if not any(is_k_entangled(K0, k) for K0 in _matroid_removals(M, e).values()):
                    res.fail(instance=M.name, k=k, e=e)
    return res


# -- tangles, decompositions, duality ---------------------------------------


def sweep_enumeration(max_n: int = 5, max_v: int = 5) -> SweepResult:
    """Pruned enumeration against the unpruned reference, plus structural invariants."""
    res = SweepResult("enumeration")
    for name, K in distinct_systems(max_n, max_v):
        for k in range(1, K.max_value() + 2):
            res.checked += 1
            fast = enumerate_tangles(K, k)
            if fast != enumerate_tangles_reference(K, k):
                res.fail(instance=name, k=k, issue="reference mismatch")
            low = low_sets(K, k)
            for T in fast:
                if not is_tangle(K, T.members, k):
                    res.fail(instance=name, k=k, issue="unsound")
                mem = set(T.members)
                for A in T.members:
                    if any(B not in mem for B in low if B & A == B):
                        res.fail(instance=name, k=k, issue="not downward closed")
                        break
                for t in range(1, k):
                    restricted = [X for X in T.members if K.lam(X) < t]
                    if not is_tangle(K, restricted, t):
                        res.fail(instance=name, k=k, t=t, issue="restriction")
    return res


def _partitions(items: list[int]) -> Iterator[list[int]]:
    """Set partitions of the given element indices, as lists of block masks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        yield [1 << first] + part
        for i in range(len(part)):
            yield part[:i] + [part[i] | 1 << first] + part[i + 1:]


def sweep_duality(max_n: int = 5, max_v: int = 5, max_k: int = 4) -> SweepResult:
    """Tangle/decomposition duality for every partition-shaped family of low sets.

    The tangle side is computed twice: by restricted search, and by filtering the
    unpruned reference enumeration.
    """
    res = SweepResult("duality")
    for name, K in distinct_systems(max_n, max_v):
        lam = K.table()
        parts = list(_partitions(list(range(K.n))))
        for k in range(1, max_k + 1):
            ref = enumerate_tangles_reference(K, k)
            ref_sets = [set(T.members) for T in ref]
            for S in parts:
                if any(lam[s] >= k for s in S):
                    continue
                res.checked += 1
                ext = extends_to_tangle(K, S, k)
                if ext != any(all(s in ts for s in S) for ts in ref_sets):
                    res.fail(instance=name, k=k, S=S, issue="restricted search disagrees with reference")
                D = search_conforming(K, S, k - 1)
                if D is not None and (width(K, D)[0] > k - 1 or not conforms(D, S)):
                    res.fail(instance=name, k=k, S=S, issue="unsound decomposition")
                if ext == (D is not None) or not duality_check(K, S, k):
                    res.fail(instance=name, k=k, S=S, tangle=ext, decomposition=D is not None)
    return res


@lru_cache(maxsize=None)
def decomposition_classes(n: int) -> tuple[PartialBranchDecomposition, ...]:
    """One brute-force decomposition per distinct (edge bipartitions, leaf displays) pattern."""
    full = (1 << n) - 1
    seen: dict[tuple, PartialBranchDecomposition] = {}
    for D in all_decompositions(n, 5):
        sides = tuple(sorted({min(a, full ^ a) for a in D.edge_sides().values()}))
        shown = tuple(sorted(D.displayed(leaf) for leaf in D.leaves()))
        seen.setdefault((sides, shown), D)
    return tuple(seen.values())


def sweep_search_completeness(max_n: int = 5, max_v: int = 4) -> SweepResult:
    """search_conforming agrees with brute force over trees with at most five leaves."""
    res = SweepResult("search-completeness")
    for name, K in systems(max_n, max_v):
        lam = K.table()
        classes = decomposition_classes(K.n)
        widths = [max((lam[a] for a in D.edge_sides().values()), default=lam[0]) for D in classes]
        for S in _partitions(list(range(K.n))):
            for bound in range(0, K.max_value() + 1):
                res.checked += 1
                brute = any(w <= bound and conforms(D, S) for D, w in zip(classes, widths))
                if brute != (search_conforming(K, S, bound) is not None):
                    res.fail(instance=name, S=S, bound=bound, brute=brute)
    return res


def sweep_branch_width_duality(max_n: int = 6, max_v: int = 5) -> SweepResult:
    res = SweepResult("branch-width-duality")
    for name, K in systems(max_n, max_v):
        bw = branch_width(K)
        for k in range(1, K.max_value() + 2):
            res.checked += 1
            if (bw >= k) != bool(enumerate_tangles(K, k)):
                res.fail(instance=name, k=k, branch_width=bw)
    return res


def sweep_easy1(max_n: int = 5, max_v: int = 5) -> SweepResult:
    res = SweepResult("easy1")
    for name, K in distinct_systems(max_n, max_v):
        lam = K.table()
        classes = decomposition_classes(K.n)
        widths = [max((lam[a] for a in D.edge_sides().values()), default=lam[0]) for D in classes]
        for k in range(1, K.max_value() + 2):
            tangles = enumerate_tangles(K, k)
            if not tangles:
                break
            for D, w in zip(classes, widths):
                if w > k - 1:
                    continue
                for T in tangles:
                    res.checked += 1
                    try:
                        tangle_leaf(K, T, D)
                    except ConsistencyError as exc:
                        res.fail(instance=name, k=k, assign=D.assign, error=str(exc))
        if not check_easy_branched(K):
            res.fail(instance=name, issue="weakly branched set outside a tangle")
    return res


def _sides_away_from(D: PartialBranchDecomposition, r: int) -> tuple[int, ...]:
    """For every tree edge, the elements on the side not containing leaf r."""
    adj = D.tree.adjacency()
    at = [0] * D.tree.num_vertices
    for i, a in enumerate(D.assign):
        at[a] |= 1 << i
    order, parent = [r], {r: -1}
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    sub = at[:]
    for v in reversed(order[1:]):
        sub[parent[v]] |= sub[v]
    return tuple(sorted(sub[v] for v in order[1:]))


@lru_cache(maxsize=None)
def rooted_classes(n: int) -> tuple[tuple[PartialBranchDecomposition, int], ...]:
    """One (decomposition, leaf) pair per distinct (displayed set, sides away from the leaf).

    Remapping onto a leaf, and the widths before and after, depend on nothing else.
    """
    seen: dict[tuple, tuple[PartialBranchDecomposition, int]] = {}
    for D in all_decompositions(n, 5):
        for r in D.leaves():
            seen.setdefault((D.displayed(r), _sides_away_from(D, r)), (D, r))
    return tuple(seen.values())


def sweep_linked(max_n: int = 5, max_v: int = 5) -> SweepResult:
    res = SweepResult("linked")
    for name, K in distinct_systems(max_n, max_v):
        lam = K.table()
        full = K.full
        kappa_to: dict[int, dict[int, int]] = {}
        for D, r in rooted_classes(K.n):
            Y = D.displayed(r)
            free = full ^ Y
            if Y not in kappa_to:
                # min of λ over supersets of X inside E∖Y, for every X, by a superset-min transform
                best = {z: lam[z] for z in submasks(free)}
                for i in bit_indices(free):
                    bit = 1 << i
                    for z in submasks(free ^ bit):
                        if best[z | bit] < best[z]:
                            best[z] = best[z | bit]
                kappa_to[Y] = best
            best = kappa_to[Y]
            # after remapping, the side of an edge away from r displays S ∩ X
            sides = _sides_away_from(D, r)
            first = True
            for X in submasks(free):
                if lam[X] != best[X]:
                    continue
                res.checked += 1
                if first or any(lam[S & X] > lam[S] for S in sides):
                    first = False
                    try:
                        remap_to_leaf(K, D, r, X)
                    except ConsistencyError as exc:
                        res.fail(instance=name, assign=D.assign, r=r, X=X, error=str(exc))
                        continue
                    if any(lam[S & X] > lam[S] for S in sides):
                        res.fail(instance=name, assign=D.assign, r=r, X=X, error="inline width check disagrees")
    return res


def _entangled_orders(K: ConnectivitySystem) -> list[int]:
    return [k for k in range(1, max_tangle_order(K) + 1) if is_k_entangled(K, k)]


def sweep_branched(max_n: int = 5, max_v: int = 5) -> SweepResult:
    res = SweepResult("branched")
    for name, K in distinct_systems(max_n, max_v):
        for k in _entangled_orders(K):
            res.checked += 1
            if not check_branched_lemma(K, k):
                res.fail(instance=name, k=k)
    return res


def sweep_branched2(max_n: int = 5, max_v: int = 5) -> SweepResult:
    res = SweepResult("branched2")
    for name, K in distinct_systems(max_n, max_v):
        for k in _entangled_orders(K):
            res.checked += 1
            if not check_branched2(K, k):
                res.fail(instance=name, k=k)
        for X in range(K.full + 1):
            for k in range(K.lam(X), K.max_value() + 1):
                D = branched_decomposition(K, X, k)
                if D is None:
                    continue
                family = [K.full ^ X] + [1 << i for i in bit_indices(X)]
                if not (width(K, D)[0] <= k and conforms(D, family) and is_weakly_branched(K, X, k)):
                    res.fail(instance=name, X=X, k=k, issue="branched but not weakly branched")
    return res


SUITES: dict[str, tuple[Callable[..., SweepResult], int, int]] = {
    "axioms": (sweep_axioms, 8, 5),
    "bc-ineq": (sweep_bc_ineq, 6, 0),
    "pm-ineq": (sweep_pm_ineq, 0, 5),
    "pivot-invariance": (sweep_pivot_invariance, 0, 5),
    "bixby": (sweep_bixby, 8, 0),
    "pm-bixby": (sweep_pm_bixby, 0, 5),
    "unsplit": (sweep_unsplit, 8, 5),
    "main": (sweep_main, 7, 0),
    "pm": (sweep_pm, 0, 5),
    "mm": (sweep_mm, 0, 5),
    "entangled": (sweep_entangled, 7, 0),
    "enumeration": (sweep_enumeration, 5, 5),
    "duality": (sweep_duality, 5, 5),
    "search-completeness": (sweep_search_completeness, 5, 4),
    "branch-width-duality": (sweep_branch_width_duality, 6, 5),
    "easy1": (sweep_easy1, 5, 5),
    "linked": (sweep_linked, 5, 5),
    "branched": (sweep_branched, 5, 5),
    "branched2": (sweep_branched2, 5, 5),
}


def run_suite(name: str, max_n: int | None = None, max_v: int | None = None) -> SweepResult:
    fn, dn, dv = SUITES[name]
    start = time.perf_counter()
    res = fn(max_n=dn if max_n is None else max_n, max_v=dv if max_v is None else max_v)
    res.elapsed = time.perf_counter() - start
    return res


__all__ = ["SUITES", "SweepResult", "run_suite"]
