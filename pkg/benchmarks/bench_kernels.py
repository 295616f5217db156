"""Benchmark the compiled integration kernel against the pure-Python twin.

Both backends run the identical workload: the classic auxiliary problem
f''' = -1/2 f f'' from (0, 0, 1), advanced across a preallocated grid in
one call. The two fills must agree bitwise -- the benchmark checks that
before reporting timings.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from nitm import _kernels_py

try:
    from nitm import _kernels
except ImportError:
    _kernels = None

BETA = 0.5
STEP = 1e-5
ETA_MAX = 8.0
REPEATS = 5


def run_fill(fill, f, fp, fpp, steps):
    f[0] = 0.0
    fp[0] = 0.0
    fpp[0] = 1.0
    start = time.perf_counter()
    bad = fill(BETA, f, fp, fpp, STEP, 0, steps)
    elapsed = time.perf_counter() - start
    if bad != -1:
        raise RuntimeError("benchmark trajectory blew up at node %d" % bad)
    return elapsed


def bench(name, fill, steps):
    f = np.empty(steps + 1)
    fp = np.empty(steps + 1)
    fpp = np.empty(steps + 1)
    best = min(run_fill(fill, f, fp, fpp, steps) for _ in range(REPEATS))
    rate = steps / best
    print("%-8s  %8.4f s  %12.3e steps/s" % (name, best, rate))
    return rate, (f, fp, fpp)


def main():
    steps = round(ETA_MAX / STEP)
    print("workload: beta=%g, %d RK4 steps of h=%g (best of %d runs)"
          % (BETA, steps, STEP, REPEATS))
    pure_rate, pure_arrays = bench("pure", _kernels_py.fill_blasius_family,
                                   steps)
    if _kernels is None:
        print("compiled kernel not built; only the pure backend was timed")
        return
    comp_rate, comp_arrays = bench("compiled", _kernels.fill_blasius_family,
                                   steps)
    for a, b in zip(pure_arrays, comp_arrays):
        if not np.array_equal(a, b):
            raise RuntimeError("backends disagree bitwise")
    print("backends agree bitwise; speedup: %.1fx" % (comp_rate / pure_rate))


if __name__ == "__main__":
    main()
