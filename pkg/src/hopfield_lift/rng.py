"""Seeded randomness.

All randomness goes through numpy's ``PCG64`` bit generator; normal variates
come from ``Generator.standard_normal`` (numpy's ziggurat method). Derived
seeds use the SplitMix64 finaliser::

    z = seed + (index + 1) * 0x9E3779B97F4A7C15       (mod 2**64)
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

Results are bitwise reproducible for a given numpy version.
"""

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix(seed, index):
    """Derive an independent 64-bit seed from ``(seed, index)``."""
    z = (int(seed) + (int(index) + 1) * _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def generator(seed):
    return np.random.Generator(np.random.PCG64(int(seed) & MASK64))


def random_signs(rng, n):
    """Uniform ``{-1, +1}`` vector of length ``n`` as int8."""
    return (2 * rng.integers(0, 2, size=n, dtype=np.int8) - 1).astype(np.int8)
