"""Seedable, portable 64-bit random generator (SplitMix64).

Every seeded behaviour in this package (fold shuffling, synthetic data)
draws from this stream so that results are bit-reproducible across
platforms and reimplementable from this file alone.

Algorithm (SplitMix64, Steele/Lea/Flood 2014):
    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z <- (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output: z XOR (z >> 31)

Derived draws:
    uniform():    top 53 bits of one output, scaled by 2^-53 -> [0, 1)
    below(n):     unbiased bounded integer by rejection sampling
    shuffle(xs):  Fisher-Yates, descending, using below()
    gauss():      Box-Muller, z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2),
                  one output per call (the sine mate is discarded)
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator; one instance per reproducible stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < threshold:
                return x % n

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates shuffle (descending index order)."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def gauss(self) -> float:
        """Standard normal draw (Box-Muller, cosine branch only)."""
        u1 = 1.0 - self.uniform()  # in (0, 1]: keeps the log finite
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
