#!/usr/bin/env python3
"""Benchmark the compiled eigensolver backend against the numpy fallback.

Times `decompose` on random dense symmetric matrices and on one realistic
workload (the combined supra-Laplacian of a two-layer preferential-
attachment multiplex). numpy.linalg.eigh timings are printed alongside as
an external reference point.

Usage: python3 benchmarks/bench_eigh.py [--sizes 50,100,200,400] [--repeats 3]
"""

import argparse
import time

import numpy as np

from suprasync import GeneratorSpec, build_supra, couple_replicas, generate_ba
from suprasync._kernels import _pure

try:
    from suprasync._kernels import _speedups
except ImportError:
    _speedups = None


def supra_matrix(n):
    layers = [generate_ba(GeneratorSpec(model="ba", n=n, seed=s, m=2))
              for s in (1, 2)]
    net = couple_replicas(layers)
    return build_supra(net, (1.0, 1.0), 0.8).combined


def random_symmetric(n, rng):
    base = rng.normal(size=(n, n))
    return 0.5 * (base + base.T)


def best_of(repeats, func, matrix):
    # decompose works in place, so hand each run a fresh copy
    times = []
    for _ in range(repeats):
        work = np.array(matrix, dtype=np.float64)
        start = time.perf_counter()
        func(work)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    backends = [("pure", _pure)]
    if _speedups is not None:
        backends.insert(0, ("compiled", _speedups))
    else:
        print("compiled backend not importable; timing the fallback only")

    header = (f"{'matrix':>22} {'n':>5} {'mode':>8}"
              + "".join(f" {name:>10}" for name, _ in backends)
              + f" {'numpy':>10} {'speedup':>8}")
    print(header)
    print("-" * len(header))

    for kind in ("random symmetric", "supra-laplacian"):
        for n in sizes:
            matrix = (random_symmetric(n, rng) if kind.startswith("random")
                      else supra_matrix(n // 2))
            for mode, vectors in (("values", False), ("full", True)):
                row = f"{kind:>22} {matrix.shape[0]:>5} {mode:>8}"
                timings = []
                for _, impl in backends:
                    t = best_of(args.repeats,
                                lambda w, impl=impl: impl.decompose(w, vectors),
                                matrix)
                    timings.append(t)
                    row += f" {t * 1e3:>8.2f}ms"
                t_np = best_of(
                    args.repeats,
                    lambda w: (np.linalg.eigh(w) if vectors
                               else np.linalg.eigvalsh(w)),
                    matrix)
                row += f" {t_np * 1e3:>8.2f}ms"
                if len(timings) == 2:
                    row += f" {timings[1] / timings[0]:>7.1f}x"
                print(row)


if __name__ == "__main__":
    main()
