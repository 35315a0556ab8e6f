"""Benchmark the compiled kernels against the pure-NumPy fallback.

Times each vectorized kernel on both backends and prints the speedup.
Run from a checkout with the package installed:

    python benchmarks/bench_kernels.py --size 200000
"""

import argparse
import importlib
import math
import time

import numpy as np


def load_backends():
    numpy_mod = importlib.import_module("sqzfilter._kernels._numpy")
    try:
        core_mod = importlib.import_module("sqzfilter._kernels._core")
    except ImportError:
        core_mod = None
    return numpy_mod, core_mod


def make_inputs(size, rng):
    v_plus = rng.uniform(0.2, 5.0, size)
    v_minus = rng.uniform(0.2, 5.0, size)
    c_cross = rng.uniform(-1.0, 1.0, size) * np.sqrt(v_plus * v_minus) * 0.9
    t_plus = rng.uniform(0.0, 1.0, size)
    t_minus = rng.uniform(0.0, 1.0, size)
    th_plus = rng.uniform(-math.pi, math.pi, size)
    th_minus = rng.uniform(-math.pi, math.pi, size)
    delta = np.linspace(-8.0e6, 8.0e6, size)
    thetas = np.linspace(0.0, math.pi, 181, endpoint=False)
    return {
        "lineshape_eval": (0.24, 0.05, 0.28, 2.0e6, 3.0e5, delta),
        "lineshape_jacobian": (0.24, 0.05, 0.28, 2.0e6, 3.0e5, delta),
        "propagate_arrays": (t_plus, t_minus, th_plus, th_minus,
                             v_plus, v_minus, c_cross),
        "homodyne_surface": (thetas, v_plus, v_minus, c_cross),
        "minmax_arrays": (v_plus, v_minus, c_cross),
    }


def best_time(func, args, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=200_000,
                        help="array length per kernel (default 200000)")
    parser.add_argument("--repeats", type=int, default=7,
                        help="timing repetitions, best is kept (default 7)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    numpy_mod, core_mod = load_backends()
    if core_mod is None:
        print("compiled backend not built; showing NumPy timings only")

    inputs = make_inputs(args.size, np.random.default_rng(args.seed))
    header = f"{'kernel':<22} {'numpy [ms]':>12}"
    if core_mod is not None:
        header += f" {'compiled [ms]':>14} {'speedup':>9}"
    print(f"array size: {args.size}, repeats: {args.repeats}")
    print(header)
    print("-" * len(header))

    for name, call_args in inputs.items():
        t_numpy = best_time(getattr(numpy_mod, name), call_args,
                            args.repeats)
        line = f"{name:<22} {t_numpy * 1e3:>12.3f}"
        if core_mod is not None:
            t_core = best_time(getattr(core_mod, name), call_args,
                               args.repeats)
            line += f" {t_core * 1e3:>14.3f} {t_numpy / t_core:>8.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
