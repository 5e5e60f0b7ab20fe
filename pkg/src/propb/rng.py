"""Counter-based SplitMix64 streams.

Every random quantity in the package is a pure function of a 64-bit seed and
a position, so trials and edges can be generated in any order (or in
parallel) and still reproduce bit-for-bit.

    output(seed, j) = finalize(seed + GOLDEN * (j + 1))      (mod 2**64)

which is exactly the j-th output of a SplitMix64 generator whose state
starts at ``seed``.  Sub-seeds for trial or edge ``i`` under a master seed
are ``derive_seed(master, i) = output(master ^ GOLDEN, i)``.

The numba kernels in :mod:`propb.kernels` re-implement ``finalize`` on
``uint64``; ``tests/test_rng.py`` pins both to the same frozen values.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


def finalize(z: int) -> int:
    """SplitMix64 output mixing function on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def output(seed: int, j: int) -> int:
    return finalize((seed & MASK64) + GOLDEN * (j + 1))


def derive_seed(master: int, index: int) -> int:
    """Sub-seed for trial/edge ``index`` under ``master``."""
    return output((master & MASK64) ^ GOLDEN, index)


def to_unit(u: int) -> float:
    """Map a 64-bit word to the open interval (0, 1).

    The top 52 bits pick one of the 2**52 odd multiples of 2**-53, all
    exactly representable, so 0 and 1 are unreachable and no rejection is
    needed.
    """
    return ((u >> 12) * 2 + 1) * _INV_2_53


class Stream:
    """Sequential reader over ``output(seed, 0), output(seed, 1), ...``."""

    def __init__(self, seed: int, start: int = 0):
        self.seed = seed & MASK64
        self.pos = start

    def next_u64(self) -> int:
        u = output(self.seed, self.pos)
        self.pos += 1
        return u

    def next_unit(self) -> float:
        return to_unit(self.next_u64())

    def below(self, bound: int) -> int:
        """Unbiased integer in ``[0, bound)`` by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        # reject the low (2**64 mod bound) words so every residue is equally likely
        floor = (1 << 64) % bound
        while True:
            u = self.next_u64()
            if u >= floor:
                return u % bound
