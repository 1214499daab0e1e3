"""Brute-force partition enumeration with per-partition rank and crank.

Ground truth for small n; everything here is exponential-time and guarded by
an explicit limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

DEFAULT_LIMIT = 60


class OracleLimitError(ValueError):
    """Enumeration refused beyond the configured limit."""


@dataclass(frozen=True)
class PartitionStat:
    parts: tuple[int, ...]
    rank: int
    crank: int


def rank_of(parts: tuple[int, ...]) -> int:
    if not parts:
        return 0
    return parts[0] - len(parts)


def crank_of(parts: tuple[int, ...]) -> int:
    if not parts:
        return 0
    ones = sum(1 for p in parts if p == 1)
    if ones == 0:
        return parts[0]
    mu = sum(1 for p in parts if p > ones)
    return mu - ones


def _descending_partitions(n: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _descending_partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int, limit: int = DEFAULT_LIMIT) -> list[PartitionStat]:
    """All partitions of n in descending-first-part order, with statistics."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise OracleLimitError(f"n={n} exceeds the oracle limit {limit}")
    return [
        PartitionStat(parts, rank_of(parts), crank_of(parts))
        for parts in _descending_partitions(n, n)
    ]


def histogram_mod11(n: int, statistic: str, limit: int = DEFAULT_LIMIT) -> tuple[int, ...]:
    """Counts of the statistic's residues modulo 11 as an 11-slot tuple.

    The crank here is always the combinatorial one; at n = 1 this differs
    from the generating-function row by design.
    """
    if statistic not in ("rank", "crank"):
        raise ValueError("statistic must be 'rank' or 'crank'")
    counts = [0] * 11
    for stat in enumerate_partitions(n, limit):
        value = stat.rank if statistic == "rank" else stat.crank
        counts[value % 11] += 1
    return tuple(counts)
