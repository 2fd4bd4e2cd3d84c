#!/usr/bin/env python3
"""Head-to-head timings: the numba kernels against their numpy fallbacks.

Both implementations share one data layout and are asserted equal in the
test suite; this script only measures speed.  The jit path pays a one-off
compilation cost on the first call (cached on disk between runs); a warmup
pass absorbs it before timing starts.

    python3 benchmarks/bench_kernels.py --pairs 300 --repeat 5
"""

import argparse
import time

import numpy as np

from fuzzmetrics.kernels import numpy_impl
from fuzzmetrics.rand import rand_line_set, rand_step_line

try:
    from fuzzmetrics.kernels import numba_impl
except ImportError:  # pragma: no cover
    numba_impl = None


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _union(rng):
    S = rand_line_set(rng, kmax=3)
    return np.ascontiguousarray(S.ivals[:, 0]), np.ascontiguousarray(S.ivals[:, 1])


def main():
    ap = argparse.ArgumentParser(description="Time numba kernels vs numpy fallbacks")
    ap.add_argument("--pairs", type=int, default=300, help="random pairs per workload")
    ap.add_argument("--repeat", type=int, default=5, help="repetitions; best time wins")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    unions = [(_union(rng), _union(rng)) for _ in range(args.pairs)]
    flats = [
        (rand_step_line(rng).line_flat(), rand_step_line(rng).line_flat())
        for _ in range(args.pairs)
    ]

    workloads = {
        "hausdorff_line": lambda impl: [
            impl.hausdorff_line(*a, *b) for a, b in unions
        ],
        "riemann_pow_line(N=4096)": lambda impl: [
            impl.riemann_pow_line(*fu, *fv, 4096, 2.0) for fu, fv in flats[: args.pairs // 8 + 1]
        ],
        "graph_directed_step_line": lambda impl: [
            impl.graph_directed_step_line(*fu, *fv, False, True) for fu, fv in flats
        ],
        "graph_grid_directed_line(1e-3)": lambda impl: [
            impl.graph_grid_directed_line(*fu, *fv, False, True, 1e-3)
            for fu, fv in flats[: args.pairs // 15 + 1]
        ],
    }

    impls = [("numpy", numpy_impl)]
    if numba_impl is not None:
        impls.append(("numba", numba_impl))
    else:
        print("numba not importable; timing the numpy fallback only")

    header = f"{'kernel':32s}" + "".join(f"{name:>12s}" for name, _ in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for name, work in workloads.items():
        for _, impl in impls:
            work(impl)  # warmup; compiles and caches the jit path
        times = [_best_of(lambda impl=impl: work(impl), args.repeat) for _, impl in impls]
        row = f"{name:32s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
