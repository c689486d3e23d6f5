"""Exact partition counts p(n) and p1(n) (partitions with no part equal to 1)."""

from __future__ import annotations

import threading
from dataclasses import dataclass

__all__ = ["PartitionTable", "build_partition_table", "partition_oracle", "ORACLE_MAX"]

ORACLE_MAX = 60


@dataclass(frozen=True)
class PartitionTable:
    max_n: int
    p_values: tuple[int, ...]
    p1_values: tuple[int, ...]

    def p(self, n: int) -> int:
        return self.p_values[n] if n >= 0 else 0

    def p1(self, n: int) -> int:
        return self.p1_values[n] if n >= 0 else 0

    def prefix_sums(self) -> tuple[int, ...]:
        """``sum_{i<=m} p(i)`` for every ``m`` in range."""
        out, acc = [], 0
        for v in self.p_values:
            acc += v
            out.append(acc)
        return tuple(out)


_lock = threading.Lock()
_cached: PartitionTable | None = None


def _pentagonal(max_n: int) -> list[int]:
    p = [0] * (max_n + 1)
    p[0] = 1
    for n in range(1, max_n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            g2 = g1 + k  # k(3k+1)/2
            term = p[n - g1]
            if g2 <= n:
                term += p[n - g2]
            total += term if k % 2 else -term
            k += 1
        p[n] = total
    return p


def build_partition_table(max_n: int) -> PartitionTable:
    """Partition table for ``0..max_n`` via Euler's pentagonal recurrence.

    The largest table built so far is kept and smaller requests are sliced
    from it.
    """
    global _cached
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    with _lock:
        big = _cached
        if big is None or big.max_n < max_n:
            p = _pentagonal(max_n)
            p1 = [1] + [p[i] - p[i - 1] for i in range(1, max_n + 1)]
            big = _cached = PartitionTable(max_n, tuple(p), tuple(p1))
    if big.max_n == max_n:
        return big
    return PartitionTable(max_n, big.p_values[: max_n + 1], big.p1_values[: max_n + 1])


def partition_oracle(n: int) -> int:
    """Count partitions of ``n`` by walking every one of them (test use only)."""
    if n < 0 or n > ORACLE_MAX:
        raise ValueError(f"oracle only runs for 0 <= n <= {ORACLE_MAX}")

    def count(rest: int, largest: int) -> int:
        if rest == 0:
            return 1
        return sum(count(rest - part, part) for part in range(min(rest, largest), 0, -1))

    return count(n, n)
