#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times the three hot paths on representative workloads and prints one
table.  Run from the repository root:

    python3 benchmarks/bench_kernels.py            # quick set
    python3 benchmarks/bench_kernels.py --full     # adds the q=11 census

The first numba call includes JIT compilation; a warmup pass is timed
out separately so the table shows steady-state throughput.
"""

import argparse
import time

import numpy as np

from ortho7 import kernels
from ortho7.families import table_for
from ortho7.field import field_for


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true",
                    help="include the q=11 canonical census (17.7M candidates)")
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can be timed")
    backends = ["numba", "numpy"] if kernels.HAVE_NUMBA else ["numpy"]

    jobs = []
    f8 = field_for(8)
    space8 = (8 - 1) * 8**6
    jobs.append(("census q=8 canonical op (1.8M)",
                 lambda be: kernels.census_scan(f8, 7, True, kernels.PROP_OP,
                                                0, space8, backend=be)))
    if args.full:
        f11 = field_for(11)
        space11 = 10 * 11**6
        jobs.append(("census q=11 canonical op (17.7M)",
                     lambda be: kernels.census_scan(f11, 7, True,
                                                    kernels.PROP_OP, 0,
                                                    space11, backend=be)))
    f49 = field_for(49)
    fams = [e.poly(f49).coeffs for e in table_for(49).entries]
    jobs.append(("pair grid q=49, 10 families (48^2 each)",
                 lambda be: [kernels.op_pair_grid(f49, f, backend=be)
                             for f in fams]))
    f31 = field_for(31)
    rng = np.random.default_rng(0)
    C = rng.integers(0, 31, size=(200_000, 8), dtype=np.int64)
    C[:, 7] = rng.integers(1, 31, size=len(C))
    jobs.append(("pp batch q=31, 200k rows",
                 lambda be: kernels.pp_batch(f31, C, backend=be)))

    width = max(len(j[0]) for j in jobs)
    header = f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, run in jobs:
        times = {}
        for be in backends:
            run(be)  # warmup
            t0 = time.perf_counter()
            run(be)
            times[be] = time.perf_counter() - t0
        row = f"{label:<{width}}  " + "  ".join(f"{times[b]:>9.3f}s" for b in backends)
        if len(backends) == 2:
            row += f"  {times['numpy'] / times['numba']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
