"""Compare the numpy and compiled outcome-sweep kernels.

Runs both implementations on identical inputs at a few problem sizes,
checks that the outputs agree bit for bit, and reports the speedup.

Usage: python3 benchmarks/bench_kernels.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from costeval._kernel import available_kernels


def make_inputs(n_tot: int, r_plus: float, seed: int):
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    p = max(1, min(n_tot - 1, round(n_tot * r_plus)))
    is_positive = np.zeros(n_tot, dtype=bool)
    is_positive[rng.permutation(n_tot)[:p]] = True
    u = rng.random((n_tot + 1, n_tot))
    sizes = np.arange(n_tot + 1, dtype=np.int64)
    fn_values = rng.normal(size=n_tot)
    return u, sizes, is_positive, fn_values


def bench(fn, inputs, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*inputs)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    kernels = {name: fn for name, fn in available_kernels().items() if fn is not None}
    if "cython" not in kernels:
        print("compiled kernel not built; only timing the numpy path")

    for n_tot in (100, 400, 1000):
        inputs = make_inputs(n_tot, r_plus=0.3, seed=7)
        results = {name: fn(*inputs) for name, fn in kernels.items()}
        if len(results) == 2:
            tp_a, sum_a = results["numpy"]
            tp_b, sum_b = results["cython"]
            assert np.array_equal(tp_a, tp_b), f"tp mismatch at n_tot={n_tot}"
            assert np.array_equal(sum_a, sum_b), f"fn-sum mismatch at n_tot={n_tot}"

        times = {name: bench(fn, inputs, args.repeats) for name, fn in kernels.items()}
        line = f"n_tot={n_tot:5d}  " + "  ".join(
            f"{name}: {seconds * 1e3:8.2f} ms" for name, seconds in times.items()
        )
        if len(times) == 2:
            line += f"  speedup: {times['numpy'] / times['cython']:.1f}x"
            line += "  (outputs bit-identical)"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
