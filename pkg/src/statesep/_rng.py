"""Deterministic pseudo-random streams for seeded instance generation.

The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
advanced by the golden-ratio increment 0x9E3779B97F4A7C15, finalized with
two xor-shift/multiply mixing steps.  Normal variates come from the
Box-Muller transform, exponential variates from inversion.  Both consume
uniforms built from the top 53 bits of one 64-bit output, offset by half
an ulp so they lie strictly inside (0, 1).

The choice is frozen: identical seeds must reproduce identical byte
streams across releases, which rules out delegating to numpy's Generator
API (its distribution methods are allowed to change between versions).
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer (wider seeds are masked)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in the open interval (0, 1): (k + 0.5) * 2**-53."""
        return ((self.next_uint64() >> 11) + 0.5) * 2.0 ** -53

    def normal_pair(self) -> tuple[float, float]:
        """One Box-Muller pair of independent standard normals."""
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        a = 2.0 * math.pi * u2
        return r * math.cos(a), r * math.sin(a)

    def normals(self, count: int) -> list[float]:
        """`count` standard normals, drawn as Box-Muller pairs in order."""
        out: list[float] = []
        while len(out) < count:
            z0, z1 = self.normal_pair()
            out.append(z0)
            out.append(z1)
        return out[:count]

    def exponential(self) -> float:
        """Standard exponential variate via inversion, -log(U)."""
        return -math.log(self.uniform())

    def simplex(self, size: int) -> list[float]:
        """Uniform point on the probability simplex: normalized exponentials."""
        draws = [self.exponential() for _ in range(size)]
        total = sum(draws)
        return [e / total for e in draws]
