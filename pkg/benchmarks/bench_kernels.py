"""Time each numeric kernel under numba and under plain numpy.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Numba functions are called once before timing so compilation is excluded.
power_sum has no compiled variant: numpy's vectorized pow was 3-4x faster
than a numba scalar loop, so both backends share the numpy version.
"""
import argparse
import timeit

import numpy as np

from pmoran import kernels
from pmoran.numrep import ProbVector


def cases():
    rng = np.random.default_rng(1)
    th = kernels.beta_thresholds(ProbVector.parse("1/2,1/4,1/4").beta)
    lo = np.sort(rng.integers(0, 3**14, 200_000)).astype(np.int64)
    hi = lo + rng.integers(0, 40, lo.size).astype(np.int64)
    f = np.sort(rng.random(1_000_000))
    return [
        ("draw_digits 1e5 x 40", kernels.draw_digits_numpy, kernels.draw_digits_numba,
         (7, 100_000, 40, th), (np.uint64(7), 100_000, 40, th)),
        ("count_cells 2e5", kernels.count_cells_numpy, kernels.count_cells_numba, (lo, hi), (lo, hi)),
        ("count_cells 2e5 unsort", kernels.count_cells_numpy, kernels.count_cells_numba,
         (lo[::-1].copy(), hi[::-1].copy()), (lo[::-1].copy(), hi[::-1].copy())),
        ("ks_sup 1e6", kernels.ks_sup_numpy, kernels.ks_sup_numba, (f,), (f,)),
    ]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<24}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, np_fn, nb_fn, np_args, nb_args in cases():
        nb_fn(*nb_args)  # compile
        t_np = best(np_fn, np_args, opts.repeat)
        t_nb = best(nb_fn, nb_args, opts.repeat)
        print(f"{name:<24}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
