"""Deterministic seed derivation.

Every randomized routine takes one 64-bit master seed and derives an
independent stream per unit of work (repetition, null network, epoch)
with :func:`derive_seed`, so results are reproducible bit-for-bit no
matter how the work is scheduled across threads.  The mixing function is
splitmix64, chosen because it is trivial to reimplement identically in
the compiled kernels.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master_seed: int, *parts: int) -> int:
    """Mix ``master_seed`` with stream labels into a new 64-bit seed.

    The rule is fixed: fold each part in with xor, advance by the
    splitmix64 increment, and finalize with the splitmix64 mixer.
    """
    h = master_seed & _MASK64
    for p in parts:
        h = _mix64(((h ^ (p & _MASK64)) + _GOLDEN) & _MASK64)
    return h


class SplitMix64:
    """Tiny deterministic generator used by the swap kernels.

    The compiled and pure-python kernels implement the identical
    sequence, so backend choice never changes a randomized result.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return _mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n) via modulo; bias is irrelevant here."""
        return self.next_u64() % n


def generator(seed: int) -> np.random.Generator:
    """numpy Generator on a PCG64 stream; used for all sampling draws."""
    return np.random.Generator(np.random.PCG64(seed))
