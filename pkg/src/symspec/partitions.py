"""Graded enumeration of integer partitions (signatures) of bounded length.

Partitions m = (m_1 >= ... >= m_r >= 0) index the irreducible polynomial
spaces; all series in the package are summed in weight blocks, so the
canonical order is by total weight, lexicographically decreasing within
a block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of nonnegative parts, padded to length r."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.parts
        if any(x < 0 for x in p):
            raise ValueError(f"parts must be nonnegative: {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {p}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def stratum(self) -> int:
        """Number of strictly positive parts (the index k with m in the k-th stratum)."""
        return sum(1 for x in self.parts if x > 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def enumerate_by_weight(r: int, n: int) -> Iterator[Partition]:
    """All partitions of weight n with at most r parts, lexicographically decreasing.

    (r=3, n=3) yields (3,0,0), (2,1,0), (1,1,1).
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")

    def rec(remaining: int, slots: int, cap: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if remaining == 0:
                yield prefix
            return
        # first part from large to small keeps lex-decreasing order
        lo = -(-remaining // slots)  # ceil: the largest part carries at least its share
        for first in range(min(remaining, cap), lo - 1, -1):
            yield from rec(remaining - first, slots - 1, first, prefix + (first,))

    for parts in rec(n, r, n if n > 0 else 0, ()):
        yield Partition(parts + (0,) * (r - len(parts)))


def enumerate_graded(r: int, max_weight: int) -> Iterator[Partition]:
    """Concatenation of the weight blocks n = 0..max_weight."""
    for n in range(max_weight + 1):
        yield from enumerate_by_weight(r, n)


def count_partitions(r: int, n: int) -> int:
    """p(n, <= r parts) by the standard recurrence (used as a cross-check)."""
    if n == 0:
        return 1
    if r == 0:
        return 0
    # p(n, <=r) = p(n, <=r-1) + p(n-r, <=r)
    table = [[0] * (n + 1) for _ in range(r + 1)]
    for k in range(r + 1):
        table[k][0] = 1
    for k in range(1, r + 1):
        for m in range(1, n + 1):
            table[k][m] = table[k - 1][m] + (table[k][m - k] if m >= k else 0)
    return table[r][n]
