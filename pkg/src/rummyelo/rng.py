"""Reproducible 64-bit random streams.

Everything random in the package goes through :class:`SplitMix64` so that a
deal, an agent's coin flips or a tournament schedule can be rebuilt from a
seed in any language.

Generator (SplitMix64, Steele/Lea/Flood 2014)::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                      # all arithmetic mod 2**64

Bounded integers use rejection sampling on the raw 64-bit output, shuffles
are Fisher-Yates from the last index down. Independent streams are derived
with :func:`derive_seed`, which folds labels into the seed through the same
finaliser.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# stream labels for derive_seed
STREAM_DEAL = 1
STREAM_SEAT1 = 2
STREAM_SEAT2 = 3
STREAM_RESHUFFLE = 4
STREAM_SCHEDULE = 5
STREAM_GAME = 6
STREAM_SPLIT = 7


def mix64(z: int) -> int:
    """SplitMix64 output finaliser."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *labels: int) -> int:
    """Derive a child seed from ``seed`` and a path of integer labels."""
    s = seed & MASK64
    for label in labels:
        s = mix64(s ^ mix64((label + GOLDEN_GAMMA) & MASK64))
    return s


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def shuffle(self, seq: MutableSequence[T]) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
