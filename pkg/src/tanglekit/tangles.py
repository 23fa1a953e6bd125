"""Tangles of connectivity systems: axiom checks, enumeration, induction and splitting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .connectivity import (
    ConnectivitySystem,
    GroundSet,
    dominates,
    embedding,
    popcount,
    project_table,
    submasks,
)
from .errors import ConsistencyError, DomainError


@dataclass(frozen=True, order=True)
class Tangle:
    """An order ``k`` and the sorted masks of the chosen small sides."""

    order: int
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self, ground: GroundSet) -> dict:
        return {"order": self.order, "members": [ground.to_bits(m) for m in self.members]}

    @classmethod
    def from_json(cls, data: dict, ground: GroundSet) -> "Tangle":
        return cls(int(data["order"]), tuple(ground.from_bits(b) for b in data["members"]))


@dataclass(frozen=True)
class TangleCheck:
    """Result of :func:`is_tangle`; ``axiom`` names the first violated axiom."""

    ok: bool
    axiom: str = ""
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _covered_table(members: Iterable[int], n: int) -> bytearray:
    """cov[x] == 1 iff some member contains x."""
    size = 1 << n
    cov = bytearray(size)
    for m in members:
        cov[m] = 1
    for i in range(n):
        bit = 1 << i
        for x in range(size):
            if not x & bit and cov[x | bit]:
                cov[x] = 1
    return cov


def _triple_cover(members: Sequence[int], n: int) -> tuple[int, ...] | None:
    """Three members (repetition allowed) whose union is everything, if any."""
    full = (1 << n) - 1
    cov = _covered_table(members, n)
    ms = sorted(members)
    for i, a in enumerate(ms):
        for b in ms[i:]:
            need = full & ~(a | b)
            if cov[need]:
                c = next(c for c in ms if c & need == need)
                return (a, b, c)
    return None


def is_tangle(K: ConnectivitySystem, members: Iterable[int], k: int) -> TangleCheck:
    """Check the tangle axioms for ``members`` at order ``k``.

    Axioms are reported in the order: membership in the low sets, one side of
    every low separation, no triple cover of E, no member of size |E|−1.
    """
    lam = K.table()
    n, full = K.n, K.full
    mset = set(members)
    for m in sorted(mset):
        K.ground.check(m)
        if lam[m] >= k:
            return TangleCheck(False, "membership", (m,))
    for a in range(full + 1):
        if lam[a] < k and a <= full ^ a:
            if (a in mset) == ((full ^ a) in mset):
                return TangleCheck(False, "orientation", (a, full ^ a))
    cover = _triple_cover(list(mset), n)
    if cover is not None:
        return TangleCheck(False, "cover", cover)
    for m in sorted(mset):
        if popcount(m) == n - 1:
            return TangleCheck(False, "size", (m,))
    return TangleCheck(True)


class _Search:
    """Depth-first orientation of the low separations.

    Choosing a member propagates: every low subset of the union of two members must
    be a member too, since otherwise its complement and those two members cover E.
    (With the pair taken twice this is plain downward closure.)
    """

    def __init__(self, K: ConnectivitySystem, k: int):
        self.K = K
        self.k = k
        lam = K.table()
        self.n = n = K.n
        self.full = full = K.full
        self.low = [m for m in range(full + 1) if lam[m] < k]
        is_low = bytearray(full + 1)
        for m in self.low:
            is_low[m] = 1
        self.is_low = is_low
        self.forbidden = bytearray(full + 1)
        self.forbidden[full] = 1
        for i in range(n):
            self.forbidden[full ^ (1 << i)] = 1
        self._low_subs: dict[int, list[int]] = {}
        # 0 undecided, 1 member, 2 excluded
        self.state = bytearray(full + 1)
        self.union_done = bytearray(full + 1)
        self.members: list[int] = []
        # entries >= 0 are members, negative entries ~u are processed unions u
        self.trail: list[int] = []
        pairs = [m for m in self.low if m < full ^ m]
        pairs.sort(key=lambda m: (popcount(m), m))
        self.pairs = pairs

    def low_subsets(self, u: int) -> list[int]:
        subs = self._low_subs.get(u)
        if subs is None:
            is_low = self.is_low
            subs = self._low_subs[u] = [s for s in submasks(u) if is_low[s]]
        return subs

    def choose(self, a: int) -> bool:
        """Make ``a`` a member and propagate; False on conflict."""
        state, full, forbidden = self.state, self.full, self.forbidden
        trail, members, union_done = self.trail, self.members, self.union_done
        stack = [a]
        while stack:
            x = stack.pop()
            st = state[x]
            if st == 1:
                continue
            if st == 2 or forbidden[x]:
                return False
            state[x] = 1
            state[full ^ x] = 2
            trail.append(x)
            members.append(x)
            for b in members:
                u = x | b
                if u == full:
                    return False
                if not union_done[u]:
                    union_done[u] = 1
                    trail.append(~u)
                    stack.extend(self.low_subsets(u))
        return True

    def undo(self, mark: int) -> None:
        state, full, trail = self.state, self.full, self.trail
        while len(trail) > mark:
            s = trail.pop()
            if s >= 0:
                state[s] = 0
                state[full ^ s] = 0
                self.members.pop()
            else:
                self.union_done[~s] = 0

    def run(self, forced: Sequence[int] = (), limit: int | None = None) -> list[Tangle]:
        if not self.low:
            # no low separations: only the empty family, which satisfies the axioms vacuously
            return [] if forced else [Tangle(self.k, ())]
        if self.n == 0:
            return []
        for m in self.low:
            if self.forbidden[m] and not self.choose(self.full ^ m):
                return []
        for m in forced:
            if not self.choose(m):
                return []
        found: list[Tangle] = []
        self._dfs(0, found, limit)
        found.sort()
        return found

    def _dfs(self, i: int, found: list[Tangle], limit: int | None) -> bool:
        pairs, state = self.pairs, self.state
        while i < len(pairs) and state[pairs[i]]:
            i += 1
        if i == len(pairs):
            members = sorted(self.members)
            if _triple_cover(members, self.n) is not None:
                raise ConsistencyError("propagation admitted a triple cover")
            found.append(Tangle(self.k, tuple(members)))
            return limit is not None and len(found) >= limit
        a = pairs[i]
        for side in (a, self.full ^ a):
            mark = len(self.trail)
            if self.choose(side) and self._dfs(i + 1, found, limit):
                self.undo(mark)
                return True
            self.undo(mark)
        return False


def enumerate_tangles(K: ConnectivitySystem, k: int) -> list[Tangle]:
    """All tangles of order ``k`` in ``K``, canonically sorted. Memoized on ``K``."""
    if k < 1:
        raise DomainError("tangle order must be at least 1")
    key = ("tangles", k)
    if key not in K.memo:
        K.memo[key] = _Search(K, k).run()
    return list(K.memo[key])


def enumerate_tangles_reference(K: ConnectivitySystem, k: int) -> list[Tangle]:
    """Unpruned enumerator: test every orientation of the low separations.

    Exponential in the number of low separations; meant for ground sets of at most
    five or six elements, as an independent check on :func:`enumerate_tangles`.
    """
    lam = K.table()
    full, n = K.full, K.n
    low = [m for m in range(full + 1) if lam[m] < k]
    if not low:
        return [Tangle(k, ())]
    if n == 0:
        return []
    pairs = [(a, full ^ a) for a in low if a < full ^ a]
    # a side equal to E or of size n-1 is never a member; orientations choosing one are skipped
    must_zero = must_one = 0
    for i, (a, b) in enumerate(pairs):
        if b == full or popcount(b) == n - 1:
            must_zero |= 1 << i
        if popcount(a) == n - 1:
            must_one |= 1 << i
    if must_zero & must_one:
        return []
    free = ((1 << len(pairs)) - 1) & ~(must_zero | must_one)
    out = []
    for sub in submasks(free):
        bits = sub | must_one
        members = [p[bits >> i & 1] for i, p in enumerate(pairs)]
        if is_tangle(K, members, k):
            out.append(Tangle(k, tuple(members)))
    out.sort()
    return out


def max_tangle_order(K: ConnectivitySystem) -> int:
    """Largest order with a tangle (0 if even order 1 has none)."""
    best = 0
    for k in range(1, K.max_value() + 2):
        if not enumerate_tangles(K, k):
            break
        best = k
    return best


def _check_low_family(K: ConnectivitySystem, S: Sequence[int], k: int) -> None:
    lam = K.table()
    union = 0
    for s in S:
        K.ground.check(s)
        if lam[s] >= k:
            raise DomainError(f"set {s:#b} has connectivity {lam[s]} >= {k}")
        union |= s
    if union != K.full:
        raise DomainError("the family does not cover the ground set")


def extends_to_tangle(K: ConnectivitySystem, S: Sequence[int], k: int) -> bool:
    """Is there an order-``k`` tangle containing every set of ``S``?"""
    _check_low_family(K, S, k)
    return bool(_Search(K, k).run(forced=list(S), limit=1))


def _projection(K: ConnectivitySystem, K0: ConnectivitySystem) -> list[int]:
    pos = embedding(K0.ground, K.ground)
    if pos is None:
        raise DomainError("ground set of K0 is not contained in that of K")
    return project_table(pos, K.n)


def _induce(K: ConnectivitySystem, proj: list[int], T0: Tangle) -> Tangle:
    lam = K.table()
    k = T0.order
    mem = set(T0.members)
    return Tangle(k, tuple(x for x in range(K.full + 1) if lam[x] < k and proj[x] in mem))


def induced_tangle(K: ConnectivitySystem, K0: ConnectivitySystem, T0: Tangle) -> Tangle:
    """The tangle of K made of the low sets X with X ∩ E0 in T0."""
    if not dominates(K, K0):
        raise DomainError("K does not dominate K0")
    if not is_tangle(K0, T0.members, T0.order):
        raise DomainError("T0 is not a tangle of K0")
    T = _induce(K, _projection(K, K0), T0)
    check = is_tangle(K, T.members, T.order)
    if not check:
        raise ConsistencyError(f"induced family is not a tangle ({check.axiom}: {check.witness})")
    return T


def _group(K: ConnectivitySystem, K0: ConnectivitySystem, proj: list[int], k: int) -> dict[Tangle, list[Tangle]]:
    groups: dict[Tangle, list[Tangle]] = {}
    for T0 in enumerate_tangles(K0, k):
        groups.setdefault(_induce(K, proj, T0), []).append(T0)
    return dict(sorted(groups.items()))


def find_splits(K: ConnectivitySystem, K0: ConnectivitySystem, k: int) -> dict[Tangle, list[Tangle]]:
    """Order-``k`` tangles of K0 grouped by the tangle of K they induce.

    A tangle of K splits in K0 iff its group has two or more entries.
    """
    if not dominates(K, K0):
        raise DomainError("K does not dominate K0")
    return _group(K, K0, _projection(K, K0), k)


@dataclass(frozen=True)
class Split:
    order: int
    tangle: Tangle
    parts: tuple[Tangle, ...]


def first_split(K: ConnectivitySystem, K0: ConnectivitySystem) -> Split | None:
    """The lowest-order tangle of K that splits in K0, or None."""
    if not dominates(K, K0):
        raise DomainError("K does not dominate K0")
    proj = _projection(K, K0)
    for k in range(1, K0.max_value() + 2):
        t0 = enumerate_tangles(K0, k)
        if not t0:
            # tangles restrict to all smaller orders, so none exist above this one
            break
        if len(t0) < 2:
            continue
        for T, parts in _group(K, K0, proj, k).items():
            if len(parts) >= 2:
                return Split(k, T, tuple(parts))
    return None


def split_free(K: ConnectivitySystem, K0: ConnectivitySystem) -> bool:
    """True iff no tangle of K, of any order, splits in K0."""
    return first_split(K, K0) is None


def is_k_entangled(K: ConnectivitySystem, k: int) -> bool:
    """At most one tangle of each order t <= k."""
    for t in range(1, k + 1):
        count = len(enumerate_tangles(K, t))
        if count > 1:
            return False
        if count == 0:
            break
    return True


__all__ = [
    "Split",
    "Tangle",
    "TangleCheck",
    "enumerate_tangles",
    "enumerate_tangles_reference",
    "extends_to_tangle",
    "find_splits",
    "first_split",
    "induced_tangle",
    "is_k_entangled",
    "is_tangle",
    "max_tangle_order",
    "split_free",
]
