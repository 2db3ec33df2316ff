"""
Seeded, splittable random streams for reproducible test instances.

The generator is SplitMix64 (Steele, Lea and Flood): 64-bit state advanced by
the golden-ratio increment, output through a fixed mixing function. Uniform
doubles use the top 53 bits. ``split`` derives an independent child stream
from the next output, so loops can hand out one stream per instance.
"""

from __future__ import annotations

import numpy as np

from .pauli import CanonicalParams, HermitianTriple

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
COEFF_RANGE = 5.0
POINT_RANGE = 10.0


class SplitMix64:
    def __init__(self, seed: int = 0):
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * ((self.next_u64() >> 11) * 2.0 ** -53)

    def uniforms(self, n: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return np.array([self.uniform(lo, hi) for _ in range(n)])

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def random_params(rng: SplitMix64, span: float = COEFF_RANGE) -> CanonicalParams:
    """Center, a, alpha2, alpha3 uniform in [-span, span], drawn in that order."""
    v = rng.uniforms(10, -span, span)
    return CanonicalParams(v[0:3], v[3:6], complex(v[6], v[7]), complex(v[8], v[9]))


def random_triple(rng: SplitMix64, span: float = COEFF_RANGE) -> HermitianTriple:
    """Each matrix from (M11, M22, Re M21, Im M21) uniform in [-span, span]."""
    mats = []
    for _ in range(3):
        m11, m22, re, im = rng.uniforms(4, -span, span)
        z = complex(re, im)
        mats.append(np.array([[m11, z.conjugate()], [z, m22]]))
    return HermitianTriple(*mats)


def random_points(rng: SplitMix64, n: int, span: float = POINT_RANGE) -> np.ndarray:
    return rng.uniforms(3 * n, -span, span).reshape(n, 3)
