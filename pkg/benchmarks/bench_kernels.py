"""Benchmark the SIS stepping kernel backends (compiled vs numpy).

Usage: python benchmarks/bench_kernels.py [--T 2000] [--sizes 200,1000,2000]

Both backends consume identical hashed uniforms, so their outputs are
bit-identical; this script measures throughput only.
"""

import argparse
import time

import numpy as np

import episwitch as ep
from episwitch._kernels import backends
from episwitch.simulate import _csr, _pow_table


def bench_backend(step, graph, steps, beta, delta, seed):
    indptr, indices = _csr(graph)
    pow_table = _pow_table(graph, beta)
    rng = np.random.default_rng(0)
    x = (rng.random(graph.n) < 0.2).astype(np.uint8)
    # warm up and force extinction-free dynamics for a fair step count
    step(graph.a, indptr, indices, x, pow_table, delta, seed, 0, False)
    start = time.perf_counter()
    cur = x
    for t in range(steps):
        cur = step(graph.a, indptr, indices, cur, pow_table, delta, seed, t, False)
    elapsed = time.perf_counter() - start
    return elapsed, int(cur.sum())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--T", type=int, default=2000, help="steps per run")
    parser.add_argument("--sizes", default="200,1000,2000",
                        help="comma-separated node counts")
    parser.add_argument("--degree", type=int, default=8)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    mods = backends()
    print(f"backends: {', '.join(mods)}   (active: {ep.BACKEND})")
    print(f"{'n':>6} {'backend':>8} {'steps/s':>12} {'node-steps/s':>14} {'final':>6}")
    for n in sizes:
        g = ep.gen_regular(n, args.degree, seed=1)
        results = {}
        for name, mod in mods.items():
            elapsed, final = bench_backend(mod.sis_step, g, args.T, 0.05, 0.2, 7)
            results[name] = (elapsed, final)
            rate = args.T / elapsed
            print(f"{n:>6} {name:>8} {rate:>12.0f} {rate * n:>14.3g} {final:>6}")
        finals = {f for _, f in results.values()}
        assert len(finals) == 1, "backends disagree"
        if len(results) == 2:
            speedup = results["python"][0] / results["cython"][0]
            print(f"{'':>6} {'speedup':>8} {speedup:>12.1f}x")


if __name__ == "__main__":
    main()
