"""Ground sets, subset masks and connectivity systems.

A subset of a ground set of size ``n`` is an ``int`` whose bit ``i`` marks
element ``i``. Every connectivity function in the package is wrapped in a
:class:`ConnectivitySystem`, which memoizes it in a lazily filled table of
``2**n`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import DomainError

MAX_GROUND = 16


def popcount(mask: int) -> int:
    return mask.bit_count()


def bit_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order, including 0 and ``mask``."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def drop_bit(mask: int, i: int) -> int:
    """Re-base ``mask`` after removing element ``i`` (which must not be in it)."""
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def insert_bit(mask: int, i: int) -> int:
    """Inverse of :func:`drop_bit`: open an empty slot at position ``i``."""
    low = mask & ((1 << i) - 1)
    return low | ((mask >> i) << (i + 1))


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate labels in ground set: {labels}")
        if len(labels) > MAX_GROUND:
            raise DomainError(f"ground set of size {len(labels)} exceeds cap {MAX_GROUND}")

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def check(self, mask: int) -> int:
        if mask < 0 or mask >> len(self.labels):
            raise DomainError(f"mask {mask:#b} is not a subset of a {len(self.labels)}-element ground set")
        return mask

    def check_index(self, i: int) -> int:
        if not 0 <= i < len(self.labels):
            raise DomainError(f"element index {i} out of range 0..{len(self.labels) - 1}")
        return i

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise DomainError(f"unknown element {label!r}") from None

    def mask_of(self, labels: Sequence[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bit_indices(self.check(mask))]

    def to_bits(self, mask: int) -> str:
        """Binary string with element 0 leftmost."""
        return "".join("1" if mask >> i & 1 else "0" for i in range(len(self.labels)))

    def from_bits(self, bits: str) -> int:
        if len(bits) != len(self.labels) or set(bits) - {"0", "1"}:
            raise DomainError(f"bad subset string {bits!r} for ground set of size {len(self.labels)}")
        return sum(1 << i for i, ch in enumerate(bits) if ch == "1")

    def without(self, i: int) -> "GroundSet":
        self.check_index(i)
        return GroundSet(self.labels[:i] + self.labels[i + 1:])


def embedding(sub: GroundSet, sup: GroundSet) -> list[int] | None:
    """Position in ``sup`` of every label of ``sub``, or None if ``sub`` is not contained."""
    pos = {lab: i for i, lab in enumerate(sup.labels)}
    try:
        return [pos[lab] for lab in sub.labels]
    except KeyError:
        return None


def lift_table(positions: Sequence[int]) -> list[int]:
    """Table mapping every mask over ``len(positions)`` elements to its image."""
    table = [0] * (1 << len(positions))
    for i, p in enumerate(positions):
        step = 1 << i
        bit = 1 << p
        for m in range(step, step << 1):
            table[m] = table[m - step] | bit
    return table


def project_table(positions: Sequence[int], n: int) -> list[int]:
    """Table mapping every mask over ``n`` elements to its trace on the embedded subset."""
    inverse = {p: i for i, p in enumerate(positions)}
    table = [0] * (1 << n)
    for j in range(n):
        step = 1 << j
        bit = 1 << inverse[j] if j in inverse else 0
        for m in range(step, step << 1):
            table[m] = table[m - step] | bit
    return table


class ConnectivitySystem:
    """A ground set with a memoized connectivity function.

    Systems are immutable once built; the memo table is write-once per entry, so
    concurrent readers always see identical values.
    """

    def __init__(self, ground: GroundSet, fn: Callable[[int], int], name: str = ""):
        self.ground = ground
        self.name = name
        self._fn = fn
        self._values = [-1] * (1 << ground.size)
        self._complete = False
        # per-system memo for derived results (tangles, ...); keys chosen by callers
        self.memo: dict = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or self.ground.labels})"

    @property
    def n(self) -> int:
        return self.ground.size

    @property
    def full(self) -> int:
        return self.ground.full

    def lam(self, mask: int) -> int:
        """Connectivity of ``mask``."""
        try:
            v = self._values[mask]
        except (IndexError, TypeError):
            self.ground.check(mask)
            raise
        if mask < 0:
            self.ground.check(mask)
        if v < 0:
            v = int(self._fn(mask))
            if v < 0:
                raise DomainError(f"connectivity function returned negative value {v}")
            self._values[mask] = v
        return v

    def table(self) -> list[int]:
        """Connectivity of every subset, indexed by mask."""
        if not self._complete:
            vals, fn = self._values, self._fn
            for m in range(len(vals)):
                if vals[m] < 0:
                    vals[m] = int(fn(m))
            self._complete = True
        return self._values

    def max_value(self) -> int:
        return max(self.table())


class SyntheticSystem(ConnectivitySystem):
    """A connectivity system given by an explicit table of values.

    The table is validated on construction; any axiom violation raises
    :class:`DomainError` naming the first one found.
    """

    def __init__(self, ground: GroundSet | int, table: Sequence[int], name: str = "synthetic", validate: bool = True):
        if isinstance(ground, int):
            ground = GroundSet.of_size(ground)
        if len(table) != 1 << ground.size:
            raise DomainError(f"table has {len(table)} entries, expected {1 << ground.size}")
        values = [int(v) for v in table]
        if any(v < 0 for v in values):
            raise DomainError("connectivity values must be non-negative")
        super().__init__(ground, values.__getitem__, name)
        if validate:
            bad = verify_axioms(self, limit=1)
            if bad:
                raise DomainError(f"table violates the connectivity axioms: {bad[0]}")


@dataclass(frozen=True)
class Violation:
    kind: str
    sets: tuple[int, ...]
    detail: str = ""

    def __str__(self) -> str:
        sets = ", ".join(f"{s:#b}" for s in self.sets)
        return f"{self.kind}({sets}){': ' + self.detail if self.detail else ''}"


def verify_axioms(K: ConnectivitySystem, limit: int | None = None) -> list[Violation]:
    """Exhaustively check symmetry and submodularity of ``K``.

    Submodularity is checked on every unordered pair, so this is O(4^n); use it in
    tests and sweeps, not on hot paths. Stops after ``limit`` violations if given.
    """
    vals = K.table()
    full = K.full
    out: list[Violation] = []

    def add(v: Violation) -> bool:
        out.append(v)
        return limit is not None and len(out) >= limit

    for x in range(full + 1):
        c = full ^ x
        if x < c and vals[x] != vals[c]:
            if add(Violation("symmetry", (x, c), f"{vals[x]} != {vals[c]}")):
                return out
    for x in range(full + 1):
        vx = vals[x]
        for y in range(x + 1, full + 1):
            lhs = vals[x & y] + vals[x | y]
            if lhs > vx + vals[y]:
                if add(Violation("submodularity", (x, y), f"{lhs} > {vx + vals[y]}")):
                    return out
    return out


def low_sets(K: ConnectivitySystem, k: int) -> list[int]:
    """All subsets of connectivity strictly less than ``k``, sorted by mask."""
    return [m for m, v in enumerate(K.table()) if v < k]


def kappa_witness(K: ConnectivitySystem, X: int, Y: int) -> tuple[int, int]:
    """Minimum of λ(Z) over X ⊆ Z ⊆ E∖Y, with the least minimizing Z."""
    K.ground.check(X)
    K.ground.check(Y)
    if X & Y:
        raise DomainError("kappa needs disjoint sets")
    free = K.full & ~(X | Y)
    best, arg = None, X
    for sub in submasks(free):
        v = K.lam(X | sub)
        if best is None or v < best or (v == best and X | sub < arg):
            best, arg = v, X | sub
    return best, arg


def kappa(K: ConnectivitySystem, X: int, Y: int) -> int:
    return kappa_witness(K, X, Y)[0]


def _embedding_or_none(K: ConnectivitySystem, K0: ConnectivitySystem) -> list[int] | None:
    return embedding(K0.ground, K.ground)


def dominates(K: ConnectivitySystem, K0: ConnectivitySystem) -> bool:
    """True iff E0 ⊆ E (by label) and λ0 ≤ λ on every subset of E0."""
    pos = _embedding_or_none(K, K0)
    if pos is None:
        return False
    lift = lift_table(pos)
    lam, lam0 = K.table(), K0.table()
    return all(lam0[m] <= lam[lift[m]] for m in range(len(lift)))


def best_split_values(K: ConnectivitySystem) -> list[int]:
    """For each A, the least max(λ(X1), λ(X2)) over partitions (X1, X2) of A.

    Empty parts are allowed. Memoized on ``K``; O(3^n) to build.
    """
    cached = K.memo.get("best_split")
    if cached is not None:
        return cached
    lam = K.table()
    best = [0] * (K.full + 1)
    for a in range(K.full + 1):
        b = lam[a] if lam[a] > lam[0] else lam[0]
        sub = (a - 1) & a
        while sub:
            x, y = lam[sub], lam[a ^ sub]
            m = x if x > y else y
            if m < b:
                b = m
            sub = (sub - 1) & a
        best[a] = b
    K.memo["best_split"] = best
    return best


@dataclass(frozen=True)
class Adherence:
    """Outcome of :func:`adheres`; truthy iff adherence holds."""

    holds: bool
    witness: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def adheres(K0: ConnectivitySystem, K: ConnectivitySystem) -> Adherence:
    """Does ``K0`` adhere to ``K``?

    Requires K to dominate K0, and every partition (A, B) of E0 to have a side that
    splits (possibly trivially) into two parts of K-connectivity at most λ0(A). On
    failure the witness is the failing partition with least A, as masks over E0.
    """
    pos = embedding(K0.ground, K.ground)
    if pos is None:
        return Adherence(False, None, "ground set not contained")
    if not dominates(K, K0):
        return Adherence(False, None, "not dominated")
    lift = lift_table(pos)
    best = best_split_values(K)
    lam0 = K0.table()
    full0 = K0.full
    for a in range(full0 + 1):
        b = full0 ^ a
        bound = lam0[a]
        if best[lift[a]] > bound and best[lift[b]] > bound:
            return Adherence(False, (a, b), "no admissible split")
    return Adherence(True)


__all__ = [
    "MAX_GROUND",
    "Adherence",
    "ConnectivitySystem",
    "GroundSet",
    "SyntheticSystem",
    "Violation",
    "adheres",
    "best_split_values",
    "bit_indices",
    "dominates",
    "drop_bit",
    "embedding",
    "insert_bit",
    "kappa",
    "kappa_witness",
    "lift_table",
    "low_sets",
    "popcount",
    "project_table",
    "submasks",
    "verify_axioms",
]
