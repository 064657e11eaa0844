"""Compare the compiled and pure-Python interface flux sweeps.

    python benchmarks/bench_kernels.py [--cells 2000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from eulerbc import _fluxkernel_py
from eulerbc.solver import nozzle_config, run_to_steady

try:
    from eulerbc import _fluxkernel
except ImportError:
    _fluxkernel = None


def field(n, seed=0):
    rng = np.random.default_rng(seed)
    return np.column_stack([rng.uniform(0.2, 3.0, n), rng.uniform(-1.0, 1.0, n), rng.uniform(0.2, 3.0, n)])


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    prim = field(args.cells)
    print(f"{'sweep':<10}{'python [ms]':>14}{'compiled [ms]':>16}{'speed-up':>10}")
    for name in ("godunov", "osher"):
        slow = best(lambda: getattr(_fluxkernel_py, f"{name}_fluxes")(prim, 1.4), args.repeat)
        if _fluxkernel is None:
            print(f"{name:<10}{slow * 1e3:>14.2f}{'n/a':>16}{'n/a':>10}")
            continue
        fast = best(lambda: getattr(_fluxkernel, f"{name}_fluxes")(prim, 1.4), args.repeat)
        print(f"{name:<10}{slow * 1e3:>14.2f}{fast * 1e3:>16.3f}{slow / fast:>9.1f}x")
    t = best(lambda: run_to_steady(nozzle_config(80, flux="osher")), 1)
    print(f"80-cell nozzle run to steady state with the active backend: {t:.2f} s")


if __name__ == "__main__":
    main()
