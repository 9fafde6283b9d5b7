#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the three hot paths (matrix exponential, l2 operator norm, and the
201-point exp sweep that dominates the hermitian cross-check batteries)
over a range of desk-scale sizes, and prints one table per kernel.

Usage: python benchmarks/bench_kernels.py [--repeat 200]
"""

import argparse
import time

import numpy as np

from banachmp.kernels import available_backends, get_backend

SIZES = (2, 4, 8, 16)


def _instances(n, count=8):
    rng = np.random.default_rng(n)
    return [
        (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
        for _ in range(count)
    ]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def bench(repeat):
    backends = {name: get_backend(name) for name in available_backends()}
    ts = np.linspace(-10.0, 10.0, 201)
    kernels = {
        "mat_exp": lambda impl, ms: [impl.mat_exp(m) for m in ms],
        "op_norm_l2": lambda impl, ms: [impl.op_norm_l2(m) for m in ms],
        "exp_sweep_defect(l2, 201 pts)": lambda impl, ms: impl.exp_sweep_defect(
            ms[0] + ms[0].conj().T, ts, 2
        ),
    }
    for kernel_name, runner in kernels.items():
        print(f"\n{kernel_name}")
        header = "  n    " + "".join(f"{name:>14}" for name in backends)
        if len(backends) == 2:
            header += f"{'speedup':>10}"
        print(header)
        for n in SIZES:
            ms = _instances(n)
            rep = max(1, repeat // (4 if "sweep" in kernel_name else 1))
            times = {
                name: _time(lambda impl=impl: runner(impl, ms), rep)
                for name, impl in backends.items()
            }
            row = f"{n:>4}  " + "".join(f"{times[name] * 1e6:>12.1f}us" for name in backends)
            if "python" in times and "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=50)
    args = parser.parse_args()
    print("backends:", ", ".join(available_backends()))
    bench(args.repeat)


if __name__ == "__main__":
    main()
