"""Numeric inner loops, each with a numba and a pure-numpy implementation.

The numba path is used when numba imports and ``PMORAN_DISABLE_NUMBA`` is
unset (or "0"). Both paths are always importable so tests and the benchmark
can compare them; ``BACKEND`` names the active one.

PRNG: every sample ``i`` owns an independent splitmix64 stream whose state
starts at ``mix64(seed + (i + 1) * GAMMA)`` (mod 2**64). Each digit consumes
one output ``z``; its top 53 bits ``u = z >> 11`` select the digit
``d = #{j >= 1 : u >= ceil(beta_j * 2**53)}``, an exact integer comparison of
``u / 2**53`` against the cumulative probabilities.
"""
import os

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("PMORAN_DISABLE_NUMBA", "0") in ("", "0")
BACKEND = "numba" if USE_NUMBA else "numpy"


def mix64(z: int) -> int:
    """splitmix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def beta_thresholds(beta) -> np.ndarray:
    """ceil(beta_j * 2**53) for j >= 1 as int64."""
    out = []
    for b in beta[1:]:
        num = b.numerator << 53
        out.append(-(-num // b.denominator))
    return np.asarray(out, dtype=np.int64)


# --- pure numpy -------------------------------------------------------------

def _np_mix(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def draw_digits_numpy(seed, n, depth, thresholds):
    idx = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = _np_mix(np.uint64(seed & MASK64) + idx * np.uint64(GAMMA))
        out = np.empty((n, depth), dtype=np.uint8)
        for k in range(depth):
            state = state + np.uint64(GAMMA)
            u = (_np_mix(state) >> np.uint64(11)).astype(np.int64)
            out[:, k] = np.searchsorted(thresholds, u, side="right")
    return out


def count_cells_numpy(lo, hi):
    if len(lo) == 0:
        return 0
    order = np.argsort(lo, kind="stable")
    lo = lo[order]
    hi = np.maximum.accumulate(hi[order])
    # a new run starts wherever lo exceeds every earlier hi
    starts = np.ones(len(lo), dtype=bool)
    starts[1:] = lo[1:] > hi[:-1]
    run_id = np.cumsum(starts) - 1
    run_lo = lo[starts]
    run_hi = np.zeros(run_id[-1] + 1, dtype=np.int64)
    np.maximum.at(run_hi, run_id, hi)
    return int(np.sum(run_hi - run_lo + 1))


def power_sum_numpy(x, alpha):
    return float(np.sum(np.power(x, alpha)))


# numpy's vectorized pow beats a compiled scalar loop, so both backends use it
def power_sum(x, alpha):
    return power_sum_numpy(np.asarray(x, np.float64), float(alpha))


def ks_sup_numpy(f_sorted):
    n = len(f_sorted)
    i = np.arange(1, n + 1, dtype=np.float64)
    d_plus = np.max(i / n - f_sorted)
    d_minus = np.max(f_sorted - (i - 1) / n)
    return float(max(d_plus, d_minus))


# --- numba ------------------------------------------------------------------

def _draw_digits_loop(seed, n, depth, thresholds):
    out = np.empty((n, depth), dtype=np.uint8)
    gamma = np.uint64(GAMMA)
    m1 = np.uint64(MIX1)
    m2 = np.uint64(MIX2)
    s30, s27, s31, s11 = np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(11)
    nt = thresholds.shape[0]
    for i in range(n):
        z = np.uint64(seed) + np.uint64(i + 1) * gamma
        z = (z ^ (z >> s30)) * m1
        z = (z ^ (z >> s27)) * m2
        state = z ^ (z >> s31)
        for k in range(depth):
            state = state + gamma
            z = state
            z = (z ^ (z >> s30)) * m1
            z = (z ^ (z >> s27)) * m2
            z = z ^ (z >> s31)
            u = np.int64(z >> s11)
            d = 0
            while d < nt and u >= thresholds[d]:
                d += 1
            out[i, k] = d
    return out


def _count_cells_loop(lo, hi):
    n = lo.shape[0]
    if n == 0:
        return 0
    ordered = True
    for j in range(1, n):
        if lo[j] < lo[j - 1]:
            ordered = False
            break
    order = np.arange(n) if ordered else np.argsort(lo, kind="mergesort")
    total = 0
    cur_lo = lo[order[0]]
    cur_hi = hi[order[0]]
    for j in range(1, order.shape[0]):
        a = lo[order[j]]
        b = hi[order[j]]
        if a > cur_hi:
            total += cur_hi - cur_lo + 1
            cur_lo = a
            cur_hi = b
        elif b > cur_hi:
            cur_hi = b
    total += cur_hi - cur_lo + 1
    return total


def _ks_sup_loop(f_sorted):
    n = f_sorted.shape[0]
    d = 0.0
    for j in range(n):
        up = (j + 1) / n - f_sorted[j]
        down = f_sorted[j] - j / n
        if up > d:
            d = up
        if down > d:
            d = down
    return d


if HAVE_NUMBA:
    _jit = numba.njit(cache=True)
    draw_digits_numba = _jit(_draw_digits_loop)
    count_cells_numba = _jit(_count_cells_loop)
    ks_sup_numba = _jit(_ks_sup_loop)
else:  # pragma: no cover
    draw_digits_numba = count_cells_numba = ks_sup_numba = None


if USE_NUMBA:
    def draw_digits(seed, n, depth, thresholds):
        return draw_digits_numba(np.uint64(seed & MASK64), n, depth, thresholds)

    def count_cells(lo, hi):
        return int(count_cells_numba(np.asarray(lo, np.int64), np.asarray(hi, np.int64)))

    def ks_sup(f_sorted):
        return float(ks_sup_numba(np.asarray(f_sorted, np.float64)))
else:
    def draw_digits(seed, n, depth, thresholds):
        return draw_digits_numpy(seed, n, depth, thresholds)

    def count_cells(lo, hi):
        return count_cells_numpy(np.asarray(lo, np.int64), np.asarray(hi, np.int64))


    def ks_sup(f_sorted):
        return ks_sup_numpy(np.asarray(f_sorted, np.float64))
