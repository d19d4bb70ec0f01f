"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 6,10,16] [--repeat 5]

Also times a full catalog check under each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from phg import _kernels_py, kernels


def random_rows(rng, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def bench_kernel(sizes, repeat, bound):
    rng = random.Random(0)
    print("backend in use: %s" % kernels.BACKEND)
    print("%6s %8s %14s %14s %8s" % ("size", "bound", "python (ms)", "compiled (ms)", "speedup"))
    for n in sizes:
        mats = [random_rows(rng, n, bound) for _ in range(20)]
        for m in mats:
            assert _kernels_py.det(m) == kernels.det(m)

        def run(mod):
            for m in mats:
                mod.echelon([list(r) for r in m], n)
                mod.det(m)

        tp = min(timeit.repeat(lambda: run(_kernels_py), number=1, repeat=repeat)) * 1e3
        tc = min(timeit.repeat(lambda: run(kernels), number=1, repeat=repeat)) * 1e3
        print("%6d %8d %14.2f %14.2f %8.1fx" % (n, bound, tp, tc, tp / tc if tc else float("inf")))


def bench_catalog():
    for flag in ("0", "1"):
        env = dict(os.environ, PHG_PURE_PYTHON=flag)
        code = ("import time; from phg import catalog, kernels; t = time.perf_counter(); "
                "catalog.check_all(workers=1); print(kernels.BACKEND, round(time.perf_counter() - t, 3))")
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        name, secs = out.stdout.split()
        print("catalog --all with %-8s backend: %s s" % (name, secs))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,8,12,16")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bound", type=int, default=9)
    args = ap.parse_args()
    bench_kernel([int(s) for s in args.sizes.split(",")], args.repeat, args.bound)
    bench_catalog()


if __name__ == "__main__":
    main()
