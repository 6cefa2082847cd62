"""Platform-independent seeded random integers (SplitMix64).

The generator uses only 64-bit integer arithmetic with fixed constants, so a
given seed yields the same stream on every platform and Python version.
"""

from typing import List

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finalizer."""
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream."""

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def next_bits(self, bits: int) -> int:
        """A uniform integer in [0, 2**bits), built from the top bits of 64-bit draws."""
        value = 0
        remaining = bits
        while remaining > 0:
            take = min(64, remaining)
            value = (value << take) | (self.next_u64() >> (64 - take))
            remaining -= take
        return value

    def below(self, bound: int) -> int:
        """A uniform integer in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        bits = max(1, (bound - 1).bit_length())
        while True:
            value = self.next_bits(bits)
            if value < bound:
                return value

    def between(self, low: int, high: int) -> int:
        """A uniform integer in [low, high]."""
        return low + self.below(high - low + 1)

    def positive_ints(self, count: int, magnitude_bits: int) -> List[int]:
        """count integers in [1, 2**magnitude_bits]."""
        return [self.next_bits(magnitude_bits) + 1 for _ in range(count)]


def derive_seed(seed: int, *path: int) -> int:
    """Child seed for a position in a tree of streams, e.g. (property, trial)."""
    state = seed & MASK64
    for step in path:
        state = mix64((state + GOLDEN_GAMMA * (step + 1)) & MASK64)
    return state
