"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--sizes 4096,65536,1048576] [--repeat 20]

Prints one row per (kernel, n) with the best-of-``repeat`` wall time of each
backend, their ratio, and the largest absolute difference in the outputs.
"""
import argparse
import timeit

import numpy as np

from tcvol import _kernels_py
from tcvol.preaverage import make_layout

try:
    from tcvol import _kernels
except ImportError:
    _kernels = None


def best_time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def max_gap(a, b):
    return max(float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) for x, y in zip(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4096,65536,1048576")
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<16}{'n':>10}{'n0':>7}{'cython [ms]':>14}{'numpy [ms]':>13}{'speed-up':>10}{'max |diff|':>12}")
    for n in (int(v) for v in args.sizes.split(",")):
        lay = make_layout(n, 0.25, 2.0)
        y = np.cumsum(rng.standard_normal(n)) / np.sqrt(n)
        xhat, s2 = _kernels_py.preaverage_bins(y, lay.n0)
        cases = {
            "preaverage_bins": (lambda m: m.preaverage_bins(y, lay.n0)),
            "local_cf": (lambda m: m.local_cf(xhat, s2, lay.n1, 1.0, lay.kappa)),
        }
        for name, call in cases.items():
            tc = best_time(lambda: call(_kernels), args.repeat)
            tp = best_time(lambda: call(_kernels_py), args.repeat)
            gap = max_gap(call(_kernels), call(_kernels_py))
            print(f"{name:<16}{n:>10}{lay.n0:>7}{tc * 1e3:>14.3f}{tp * 1e3:>13.3f}{tp / tc:>10.2f}{gap:>12.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
