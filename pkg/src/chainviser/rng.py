"""Self-contained 64-bit PRNG used everywhere randomness is needed.

SplitMix64 (Steele, Lea & Flood's mix function, as published with the
xoshiro generators). Chosen over the platform RNG so that golden files
regenerate identically on any machine or language.

Reference outputs, seed 1234567:
    6457827717110365317, 3203168211198807973, 9817491932198370423,
    4593380528125082431, 16408922859458223821
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic stream of 64-bit values plus the derived draws the
    chain generator needs."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform int in [0, bound). Plain modulo; the bias is far below
        anything the statistics here could detect."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform int in [lo, hi], both ends inclusive."""
        return lo + self.below(hi - lo + 1)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def poisson(self, mean: float) -> int:
        """Poisson draw via inverse-transform sequential search.

        Exact for the means used here; rejects means large enough for
        exp(-mean) to underflow.
        """
        if mean < 0:
            raise ValueError("mean must be non-negative")
        if mean == 0:
            return 0
        if mean > 600:
            raise ValueError("poisson mean above supported range (600)")
        u = self.uniform()
        p = math.exp(-mean)
        cumulative = p
        k = 0
        # the ceiling guards against u landing above the float-rounded
        # CDF plateau, which would otherwise loop forever
        ceiling = int(mean + 60 * math.sqrt(mean) + 100)
        while u > cumulative and k < ceiling:
            k += 1
            p *= mean / k
            cumulative += p
        return k

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def weighted_index(self, cumulative_weights: list[int]) -> int:
        """Index drawn proportionally to weights; takes the running totals
        so the caller can precompute them once."""
        r = self.below(cumulative_weights[-1])
        for i, bound in enumerate(cumulative_weights):
            if r < bound:
                return i
        raise AssertionError("unreachable")
