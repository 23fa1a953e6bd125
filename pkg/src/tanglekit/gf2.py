"""GF(2) elimination on int bitsets."""

from __future__ import annotations

from typing import Iterable


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of the given bit vectors."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return len(pivots)


__all__ = ["gf2_rank"]
