"""Compiled hot loops.

Two operations are inherently byte- or swap-serial and dominate runtime on
megabyte inputs, so they are jitted: the chained digest and the
Fisher-Yates index shuffle. Everything else in the package vectorizes
with numpy directly.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_DIGEST_IV = np.uint64(0x517CC1B727220A95)


@njit(cache=True, inline="always")
def _mix64(z):
    z ^= z >> np.uint64(30)
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z = z * np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


@njit(cache=True)
def digest_kernel(key, data):
    """Chained 64-bit digest over a uint8 array; length-finalized."""
    state = _mix64(key ^ _DIGEST_IV)
    for i in range(data.size):
        state = _mix64(state ^ np.uint64(data[i]))
    return _mix64(state ^ np.uint64(data.size))


@njit(cache=True)
def shuffle_kernel(seed, n):
    """Fisher-Yates shuffle of 0..n-1.

    Swap partner for position i (descending) is the next word of the
    counter-mode stream mix64(seed + ctr * golden), reduced mod (i + 1).
    """
    out = np.arange(n, dtype=np.int64)
    ctr = np.uint64(0)
    one = np.uint64(1)
    for i in range(n - 1, 0, -1):
        ctr += one
        w = _mix64(seed + ctr * _GOLDEN)
        j = np.int64(w % np.uint64(i + 1))
        t = out[i]
        out[i] = out[j]
        out[j] = t
    return out
