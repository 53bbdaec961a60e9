"""Seeded, platform-independent random stream.

The generator is xoshiro256** (Blackman and Vigna) with its 256-bit state
filled from the seed by SplitMix64. Two derived draws are used by the
annealer:

* ``bounded(n)``: an unbiased integer in ``[0, n)`` via Lemire's
  multiply-and-reject on the upper 32 bits of one output word
  (``n`` must be below ``2**32``).
* ``uniform()``: a double in ``[0, 1)`` from the upper 53 bits of one
  output word.

Everything is plain 64-bit integer arithmetic, so a given seed produces
the same stream on every platform. The jitted functions below operate on
a ``uint64[4]`` state array in place; :class:`Xoshiro256` wraps that array
for Python callers.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MASK64 = (1 << 64) - 1


def splitmix64_sequence(seed: int, count: int) -> list[int]:
    """Return ``count`` consecutive SplitMix64 outputs starting from ``seed``."""
    x = seed & _MASK64
    out = []
    for _ in range(count):
        x = (x + 0x9E3779B97F4A7C15) & _MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out.append(z ^ (z >> 31))
    return out


@njit(inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(nogil=True, cache=True, error_model="numpy")
def next_u64(state):
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    result = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
    t = s1 << np.uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3
    return result


@njit(nogil=True, cache=True, error_model="numpy")
def next_bounded(state, n):
    bound = np.uint64(n)
    m = (next_u64(state) >> np.uint64(32)) * bound
    low = m & np.uint64(0xFFFFFFFF)
    if low < bound:
        threshold = (np.uint64(0x100000000) - bound) % bound
        while low < threshold:
            m = (next_u64(state) >> np.uint64(32)) * bound
            low = m & np.uint64(0xFFFFFFFF)
    return np.int64(m >> np.uint64(32))


@njit(nogil=True, cache=True, error_model="numpy")
def next_uniform(state):
    return np.float64(next_u64(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(nogil=True, cache=True, error_model="numpy")
def _bounded_batch(state, n, out):
    for i in range(out.shape[0]):
        out[i] = next_bounded(state, n)


@njit(nogil=True, cache=True, error_model="numpy")
def _uniform_batch(state, out):
    for i in range(out.shape[0]):
        out[i] = next_uniform(state)


class Xoshiro256:
    """xoshiro256** stream seeded through SplitMix64.

    >>> a, b = Xoshiro256(7), Xoshiro256(7)
    >>> a.next_u64() == b.next_u64()
    True
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        words = splitmix64_sequence(self.seed, 4)
        self.state = np.array(words, dtype=np.uint64)

    @classmethod
    def from_state(cls, words) -> "Xoshiro256":
        rng = cls.__new__(cls)
        rng.seed = None
        rng.state = np.array([int(w) & _MASK64 for w in words], dtype=np.uint64)
        if not rng.state.any():
            raise ValueError("xoshiro256 state must not be all zero")
        return rng

    def next_u64(self) -> int:
        return int(next_u64(self.state))

    def bounded(self, n: int, size: int | None = None):
        if not 0 < n < 2**32:
            raise ValueError(f"bound must lie in [1, 2**32), got {n}")
        if size is None:
            return int(next_bounded(self.state, n))
        out = np.empty(size, dtype=np.int64)
        _bounded_batch(self.state, n, out)
        return out

    def uniform(self, size: int | None = None):
        if size is None:
            return float(next_uniform(self.state))
        out = np.empty(size, dtype=np.float64)
        _uniform_batch(self.state, out)
        return out

    def copy(self) -> "Xoshiro256":
        other = Xoshiro256.__new__(Xoshiro256)
        other.seed = self.seed
        other.state = self.state.copy()
        return other
