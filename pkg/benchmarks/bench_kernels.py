"""Compare the Cython kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--n 16] [--repeat 3]
"""

import argparse
import time

import numpy as np

from hopfield_lift import _fallback
from hopfield_lift.exact import sample_instance
from hopfield_lift.rng import generator, random_signs

try:
    from hopfield_lift import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_gray(mod, inst, repeat):
    n = inst.n
    return best_of(lambda: mod.gray_sweep(inst.ht, np.ones(n, dtype=np.int8), 1, n - 1, True), repeat)


def bench_search(mod, inst, restarts, repeat):
    def run():
        best = 0.0
        for r in range(restarts):
            s = random_signs(generator(r), inst.n)
            best = max(best, mod.local_search(inst.ht, s, True, True, 0, 1000, 1e-12)[0])
        return best

    return best_of(run, repeat)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=16, help="spins for the Gray-code sweep")
    ap.add_argument("--search-n", type=int, default=50)
    ap.add_argument("--restarts", type=int, default=32)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    gray_inst = sample_instance(args.n, args.n, "gaussian", 1)
    search_inst = sample_instance(args.search_n, args.search_n, "gaussian", 1)
    states = 2 ** (args.n - 1)
    rows = []
    for name, mod in (("cython", _kernels), ("python", _fallback)):
        if mod is None:
            print(f"{name}: not built")
            continue
        tg, g = bench_gray(mod, gray_inst, args.repeat)
        ts, s = bench_search(mod, search_inst, args.restarts, args.repeat)
        rows.append((name, tg, ts, g[0], s))
        print(
            f"{name:>6}  gray n={args.n}: {tg:8.4f}s ({states / tg:11.0f} states/s)   "
            f"bit-flip n={args.search_n} x{args.restarts}: {ts:8.4f}s"
        )
    if len(rows) == 2:
        (_, cg, cs, cgv, csv_), (_, pg, ps, pgv, psv) = rows
        print(f"speedup  gray: {pg / cg:.1f}x   bit-flip: {ps / cs:.1f}x")
        print(f"optimum agreement  gray: {abs(cgv - pgv) / pgv:.1e}   bit-flip: {abs(csv_ - psv) / psv:.1e}")


if __name__ == "__main__":
    main()
