#!/usr/bin/env python3
"""
Benchmark the numba kernels against the pure-numpy fallback.

Compares both backends on the two hot paths:
1. pair_cn_aa: common-neighbour count and Adamic-Adar sum per class pair
2. instance_common_total: summed instance-level common neighbours

Both backends are imported directly, so the RELGAP_BACKEND environment
variable does not affect this script.

Usage:
    python3 benchmarks/benchmark_kernels.py
    python3 benchmarks/benchmark_kernels.py --sizes 100 300 1000
    python3 benchmarks/benchmark_kernels.py --output results.json
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import time
from datetime import datetime, timezone

import numpy as np

from relgap.graphs import UndirectedGraph
from relgap.kernels import _numba, _numpy, graph_csr, pair_id_arrays


def random_graph(rng: random.Random, n: int, p: float) -> UndirectedGraph:
    graph = UndirectedGraph()
    names = [f"n{i:05d}" for i in range(n)]
    for name in names:
        graph.add_node(name)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                graph.add_edge(names[i], names[j])
    return graph


def warmup_jit() -> None:
    """Trigger JIT compilation outside the timed sections."""
    print("Warming up JIT compilation...")
    g = random_graph(random.Random(0), 6, 0.8)
    _nodes, index, indptr, indices = graph_csr(g)
    pairs = list(itertools.combinations(sorted(g.nodes), 2))
    xs, ys = pair_id_arrays(index, pairs)
    _numba.pair_cn_aa(indptr, indices, xs, ys)
    ids = np.arange(3, dtype=np.int64)
    _numba.instance_common_total(indptr, indices, ids, ids)
    print("JIT warmup complete.\n")


def timed(fn, *args, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def benchmark_pair_cn_aa(sizes: list[int], density: float, repeats: int) -> list[dict]:
    results = []
    print("=" * 66)
    print(f"PAIR CN/AA BENCHMARK (edge probability {density}, best of {repeats})")
    print("=" * 66)
    print(f"{'nodes':>7} {'pairs':>9} {'numba (s)':>11} {'numpy (s)':>11} {'speedup':>9}")
    print("-" * 51)

    for n in sizes:
        g = random_graph(random.Random(n), n, density)
        _nodes, index, indptr, indices = graph_csr(g)
        pairs = list(itertools.combinations(sorted(g.nodes), 2))
        xs, ys = pair_id_arrays(index, pairs)

        t_numba, out_numba = timed(_numba.pair_cn_aa, indptr, indices, xs, ys, repeats=repeats)
        t_numpy, out_numpy = timed(_numpy.pair_cn_aa, indptr, indices, xs, ys, repeats=repeats)

        if not np.array_equal(out_numba[0], out_numpy[0]):
            raise AssertionError(f"backends disagree on CN at n={n}")
        if not np.allclose(out_numba[1], out_numpy[1], rtol=1e-12, atol=0.0):
            raise AssertionError(f"backends disagree on AA at n={n}")

        speedup = t_numpy / t_numba if t_numba > 0 else float("inf")
        print(f"{n:>7} {len(pairs):>9} {t_numba:>11.5f} {t_numpy:>11.5f} {speedup:>8.1f}x")
        results.append(
            {
                "kernel": "pair_cn_aa",
                "nodes": n,
                "pairs": len(pairs),
                "numba_seconds": t_numba,
                "numpy_seconds": t_numpy,
                "speedup": speedup,
            }
        )
    return results


def benchmark_instance_common_total(sizes: list[int], density: float, repeats: int) -> list[dict]:
    results = []
    print()
    print("=" * 66)
    print(f"INSTANCE COMMON-NEIGHBOUR BENCHMARK (edge probability {density})")
    print("=" * 66)
    print(f"{'nodes':>7} {'group':>7} {'numba (s)':>11} {'numpy (s)':>11} {'speedup':>9}")
    print("-" * 51)

    for n in sizes:
        rng = random.Random(n + 1)
        g = random_graph(rng, n, density)
        _nodes, index, indptr, indices = graph_csr(g)
        names = sorted(g.nodes)
        group = max(2, n // 4)
        ix = np.array(sorted(index[v] for v in rng.sample(names, group)), dtype=np.int64)
        iy = np.array(sorted(index[v] for v in rng.sample(names, group)), dtype=np.int64)

        t_numba, out_numba = timed(
            _numba.instance_common_total, indptr, indices, ix, iy, repeats=repeats
        )
        t_numpy, out_numpy = timed(
            _numpy.instance_common_total, indptr, indices, ix, iy, repeats=repeats
        )

        if tuple(int(v) for v in out_numba) != tuple(int(v) for v in out_numpy):
            raise AssertionError(f"backends disagree on instance totals at n={n}")

        speedup = t_numpy / t_numba if t_numba > 0 else float("inf")
        print(f"{n:>7} {group:>7} {t_numba:>11.5f} {t_numpy:>11.5f} {speedup:>8.1f}x")
        results.append(
            {
                "kernel": "instance_common_total",
                "nodes": n,
                "group_size": group,
                "numba_seconds": t_numba,
                "numpy_seconds": t_numpy,
                "speedup": speedup,
            }
        )
    return results


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument(
        "--sizes", type=int, nargs="+", default=[100, 200, 400, 800],
        help="Graph sizes (node counts) to benchmark.",
    )
    parser.add_argument(
        "--density", type=float, default=0.05, help="Edge probability of the random graphs."
    )
    parser.add_argument(
        "--repeats", type=int, default=3, help="Timing repeats; the best run is reported."
    )
    parser.add_argument("--output", help="Also write the results as JSON to this path.")
    args = parser.parse_args()

    warmup_jit()
    results = benchmark_pair_cn_aa(args.sizes, args.density, args.repeats)
    results += benchmark_instance_common_total(args.sizes, args.density, args.repeats)

    if args.output:
        payload = {
            "generated": datetime.now(timezone.utc).isoformat(),
            "density": args.density,
            "repeats": args.repeats,
            "results": results,
        }
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        print(f"\nResults written to {args.output}")


if __name__ == "__main__":
    main()
