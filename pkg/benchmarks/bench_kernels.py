"""Benchmark the Picard fixed-point kernel: compiled extension vs numpy.

Run as: python benchmarks/bench_kernels.py [--sizes 128,256,512] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from navier_norms import bihari
from navier_norms.kernels import get_backend


def make_problem(n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    inst = bihari.random_instance(rng, n=n)
    M = bihari._product_matrix(inst)
    a = np.concatenate(([inst.a.values[0]], inst.a.values))
    return M, a, inst.beta


def bench(backend, M, a, beta, repeats: int) -> tuple[float, int]:
    best = np.inf
    iterations = 0
    for _ in range(repeats):
        start = time.perf_counter()
        _, iterations, _ = backend.picard_solve(M, a, beta, 1e-10, 10_000)
        best = min(best, time.perf_counter() - start)
    return best, iterations


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="128,256,512,1024")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = {"python": get_backend("python")}
    try:
        backends["cython"] = get_backend("cython")
    except ImportError:
        print("compiled extension not built; benchmarking the fallback only")

    print(f"{'n':>6} " + " ".join(f"{name:>12}" for name in backends) + "   iters")
    for n in sizes:
        M, a, beta = make_problem(n)
        row, iters = [], 0
        for backend in backends.values():
            t, iters = bench(backend, M, a, beta, args.repeats)
            row.append(f"{t * 1e3:>10.2f}ms")
        print(f"{n:>6} " + " ".join(row) + f"   {iters}")


if __name__ == "__main__":
    main()
