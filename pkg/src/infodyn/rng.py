"""Seedable xoshiro256++ generator with Box-Muller normal variates.

The algorithm is pinned so random ensembles are reproducible from a 64-bit
seed on any platform:

* state: four 64-bit words filled by four successive splitmix64 outputs
  starting from ``seed``;
* uniform doubles: ``(next() >> 11) * 2**-53`` in ``[0, 1)``;
* normal pairs: Box-Muller with ``u1 = 1 - uniform()`` (so ``u1 in (0, 1]``)
  and ``u2 = uniform()``, giving ``r*cos(2 pi u2), r*sin(2 pi u2)`` with
  ``r = sqrt(-2 ln u1)``.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(x: int) -> tuple[int, int]:
    """One splitmix64 step; returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return x, z ^ (z >> 31)


class Xoshiro256pp:
    """xoshiro256++ 1.0 (Blackman & Vigna)."""

    def __init__(self, seed: int = 0, *, state: tuple[int, int, int, int] | None = None):
        if state is not None:
            s = [w & _MASK for w in state]
            if not any(s):
                raise ValueError("xoshiro256++ state must not be all zero")
        else:
            x = seed & _MASK
            s = []
            for _ in range(4):
                x, out = splitmix64(x)
                s.append(out)
        self._s = s

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[0] + s[3]) & _MASK, 23) + s[0]) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def normal_pair(self) -> tuple[float, float]:
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        phi = 2.0 * math.pi * u2
        return r * math.cos(phi), r * math.sin(phi)
