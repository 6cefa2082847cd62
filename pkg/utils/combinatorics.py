"""Lexicographic combination stepping and ranking."""

from math import comb
from typing import List


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k is negative or larger than n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def next_combination(combo: List[int], pool_size: int) -> int:
    """Advance combo to its lexicographic successor in place.

    Args:
        combo: Strictly increasing positions in range(pool_size)
        pool_size: Number of items being chosen from

    Returns:
        The leftmost position that changed, or -1 if combo was the last one
        (combo is then left untouched)
    """
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == pool_size - k + i:
        i -= 1
    if i < 0:
        return -1
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return i


def unrank_combination(rank: int, pool_size: int, k: int) -> List[int]:
    """The combination at a given lexicographic rank (0-based).

    Raises:
        ValueError: If rank is outside [0, C(pool_size, k))
    """
    if not 0 <= rank < binomial(pool_size, k):
        raise ValueError(f"Rank {rank} out of range for C({pool_size}, {k})")
    combo: List[int] = []
    x = 0
    for i in range(k):
        while True:
            block = binomial(pool_size - x - 1, k - i - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        combo.append(x)
        x += 1
    return combo


def split_ranks(total: int, parts: int) -> List[range]:
    """Split [0, total) into at most `parts` contiguous, nearly equal rank ranges."""
    parts = max(1, min(parts, total)) if total else 1
    size, extra = divmod(total, parts)
    ranges = []
    start = 0
    for p in range(parts):
        stop = start + size + (1 if p < extra else 0)
        ranges.append(range(start, stop))
        start = stop
    return ranges
